//! Sampled equivalence checks for the rewrite lemmas.
//!
//! Each check builds an instance `(pre, lhs, rhs)` from a seed and evaluates
//! `pre → (lhs ↔ rhs)` exactly at sampled assignments that satisfy `pre`.
//! Samplers are tailored so that the precondition holds often and the rare
//! cases of each rewrite get hit.

use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use pow2qe_core::division::{clear_lambda_division, dn_of_quotient, eliminate_division, rewrite_lambda_quotient};
use pow2qe_core::eval::{eval_qf, eval_term, Assignment};
use pow2qe_core::limits::{Guard, Limits, NoClock};
use pow2qe_core::measure::{div_lambda_depth, lambda_depth};
use pow2qe_core::normal::is_simple_in;
use pow2qe_core::polyx::PolyInX;
use pow2qe_core::rational::pow2;
use pow2qe_core::simple::{
    dn_monomial_split, dn_poly_cases, dn_shift_cover, lambda_poly_cases, lambda_poly_monomial, lambda_window,
    make_simple, squeeze_lambda, LambdaCase, Mode,
};
use pow2qe_core::term::Name;
use pow2qe_core::{Error, Formula, Term};
use rand::Rng;

use super::gen::{gen_formula, gen_poly_in_x, gen_term, Profile};
use super::mutation::{drop_first_disjunct, drop_last_disjunct, shift_dn_atoms, weaken_first_strict, Mutation};
use super::sample::{any_value, positive_rational, power, ratio, rng, show, Rng8};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    LambdaWindow,
    DnShiftCover,
    RewriteLambdaQuotient,
    ClearLambdaDivision,
    DnOfQuotient,
    EliminateDivision,
    LambdaCasesInequality,
    LambdaCasesEquality,
    LambdaPolyMonomial,
    Squeeze,
    DnPolyCases,
    DnMonomialSplit,
    MakeSimple,
}

impl Lemma {
    pub const ALL: [Lemma; 13] = [
        Lemma::LambdaWindow,
        Lemma::DnShiftCover,
        Lemma::RewriteLambdaQuotient,
        Lemma::ClearLambdaDivision,
        Lemma::DnOfQuotient,
        Lemma::EliminateDivision,
        Lemma::LambdaCasesInequality,
        Lemma::LambdaCasesEquality,
        Lemma::LambdaPolyMonomial,
        Lemma::Squeeze,
        Lemma::DnPolyCases,
        Lemma::DnMonomialSplit,
        Lemma::MakeSimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::LambdaWindow => "lambda-window",
            Lemma::DnShiftCover => "dn-shift-cover",
            Lemma::RewriteLambdaQuotient => "lambda-quotient",
            Lemma::ClearLambdaDivision => "clear-lambda-division",
            Lemma::DnOfQuotient => "dn-of-quotient",
            Lemma::EliminateDivision => "eliminate-division",
            Lemma::LambdaCasesInequality => "lambda-cases-inequality",
            Lemma::LambdaCasesEquality => "lambda-cases-equality",
            Lemma::LambdaPolyMonomial => "lambda-poly-monomial",
            Lemma::Squeeze => "squeeze",
            Lemma::DnPolyCases => "dn-poly-cases",
            Lemma::DnMonomialSplit => "dn-monomial-split",
            Lemma::MakeSimple => "make-simple",
        }
    }
}

/// Size cap for rewrite outputs. Instances over it are redrawn, since the
/// blowup is a resource limit rather than a wrong answer.
pub const MAX_SIZE: usize = 100_000;

type Sampler = Box<dyn Fn(&mut Rng8) -> Assignment>;

pub struct Instance {
    pub pre: Formula,
    pub lhs: Formula,
    pub rhs: Formula,
    /// Syntactic postcondition of the rewrite output.
    pub post_ok: bool,
    sampler: Sampler,
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub lemma: Lemma,
    pub instance_seed: u64,
    pub lhs: String,
    pub rhs: String,
    /// Empty when the instance could not be built or evaluated.
    pub assignment: String,
    pub lhs_value: Option<bool>,
    pub rhs_value: Option<bool>,
    pub error: Option<String>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} seed {}: ", self.lemma.name(), self.instance_seed)?;
        if let Some(e) = &self.error {
            return write!(f, "error {e}");
        }
        write!(
            f,
            "at {} lhs={:?} rhs={:?}\n  lhs: {}\n  rhs: {}",
            self.assignment, self.lhs_value, self.rhs_value, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub instances: usize,
    /// Instances that reached the requested number of precondition-satisfying samples.
    pub full_instances: usize,
    pub samples: usize,
    pub failures: Vec<Failure>,
    pub postcondition_violations: usize,
    /// Instances replaced because a rewrite output exceeded [`MAX_SIZE`].
    pub redrawn: usize,
    pub millis: u128,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.postcondition_violations == 0 && self.full_instances == self.instances
    }
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

fn nm(s: &str) -> Name {
    Name::from(s)
}

/// Exponent of a sampled power of two; small ranges make coincidences likely.
fn exp(r: &mut Rng8) -> i64 {
    r.gen_range(-5..=5)
}

/// A value in `(lo, hi)` spread over the dyadic scales in between.
fn between(r: &mut Rng8, lo: &BigRational, hi: &BigRational) -> BigRational {
    let t = ratio(r.gen_range(1..=63), 64);
    lo + (hi - lo) * t
}

fn params_profile() -> Profile {
    Profile { vars: vec!["x".into(), "y".into(), "z".into()], lambda_nesting: 1, ..Profile::default() }
}

/// `x` a power of two, `y` and `z` from the mixed pool.
fn poly_env(r: &mut Rng8) -> Assignment {
    let mut env = Assignment::new();
    env.insert(nm("x"), pow2(exp(r)));
    env.insert(nm("y"), any_value(r));
    env.insert(nm("z"), any_value(r));
    env
}

/// `Σ_{i≥1} c_i x^i` under `env`.
fn tail_value(p: &PolyInX, env: &Assignment) -> BigRational {
    let mut tail = p.clone();
    tail.coeffs[0] = Term::zero();
    eval_term(&tail.to_term(), env).expect("closed under env")
}

/// A polynomial in `x` whose constant coefficient is the variable `c`, so
/// samplers can plant a prescribed value of `p(x)`.
fn plantable_poly(r: &mut Rng8, max_degree: usize) -> PolyInX {
    let degree = r.gen_range(1..=max_degree);
    let mut p = gen_poly_in_x(r, &params_profile(), "x", degree);
    p.coeffs[0] = Term::var("c");
    p
}

/// Whether at least a quarter of 40 samples satisfy `pre`.
fn viable(pre: &Formula, sampler: &dyn Fn(&mut Rng8) -> Assignment, r: &mut Rng8) -> bool {
    (0..40).filter(|_| eval_qf(pre, &sampler(r)).unwrap_or(false)).count() >= 10
}

/// A random polynomial in `x` that is positive at a fair share of sampled points.
fn positive_somewhere(r: &mut Rng8, max_degree: usize) -> PolyInX {
    loop {
        let degree = r.gen_range(1..=max_degree);
        let p = gen_poly_in_x(r, &params_profile(), "x", degree);
        let pre = Formula::and(Formula::power(x()), Formula::lt(Term::zero(), p.to_term()));
        if viable(&pre, &poly_env, r) {
            return p;
        }
    }
}

fn some_coeff_nonzero(p: &PolyInX) -> Formula {
    Formula::disj(p.coeffs.iter().map(|c| Formula::not(Formula::eq(c.clone(), Term::zero()))).collect())
}

pub fn build(lemma: Lemma, seed: u64, mutation: Option<Mutation>) -> pow2qe_core::Result<Instance> {
    let m = mutation.filter(|m| m.lemma() == lemma);
    let mut r = rng(seed ^ (lemma as u64) << 40);
    let guard = Guard::new(Limits { max_size: MAX_SIZE, ..Limits::default() }, &NoClock);
    let on_power_x: Sampler = Box::new(|r| {
        let mut env = poly_env(r);
        env.remove(&nm("z"));
        env
    });
    Ok(match lemma {
        Lemma::LambdaWindow => {
            let n = r.gen_range(1..=6u32);
            let u = Term::var("u");
            let mut rhs = lambda_window(&u, &x(), n);
            if m == Some(Mutation::WindowDropTop) {
                rhs = drop_last_disjunct(&rhs);
            }
            let pre = Formula::conj(vec![
                Formula::power(x()),
                Formula::lt(Term::zero(), u.clone()),
                Formula::lt(u.clone(), x()),
                Formula::le(x(), Term::shifted(n as i64, u)),
            ]);
            let sampler: Sampler = Box::new(move |r| {
                let xv = pow2(exp(r));
                // u in [x/2^(j+1), x/2^j) for a random scale j < n.
                let j = r.gen_range(0..n as i64);
                let lo = &xv * pow2(-j - 1);
                let hi = &xv * pow2(-j);
                let u = if r.gen_bool(0.2) { hi.clone() * ratio(1, 2) } else { between(r, &lo, &hi) };
                [(nm("x"), xv), (nm("u"), u)].into_iter().collect()
            });
            Instance { pre, lhs: Formula::True, rhs, post_ok: true, sampler }
        }
        Lemma::DnShiftCover => {
            let n = r.gen_range(1..=7u32);
            let mut rhs = dn_shift_cover(&x(), n);
            if m == Some(Mutation::CoverDropUnshifted) {
                rhs = drop_first_disjunct(&rhs);
            }
            let sampler: Sampler =
                Box::new(|r| [(nm("x"), pow2(r.gen_range(-20..=20)))].into_iter().collect());
            Instance { pre: Formula::power(x()), lhs: Formula::True, rhs, post_ok: true, sampler }
        }
        Lemma::RewriteLambdaQuotient => {
            let prof = Profile { vars: vec!["a".into(), "b".into()], term_depth: 1, ..Profile::default() };
            let sampler: Sampler = Box::new(|r| {
                let mut v = || if r.gen_bool(0.3) { power(r, -4, 4) } else { positive_rational(r) };
                [(nm("a"), v()), (nm("b"), v())].into_iter().collect()
            });
            // Redraw until both terms are positive on a fair share of samples.
            let positive = |num: &Term, den: &Term, r: &mut Rng8| {
                let pre = Formula::and(Formula::lt(Term::zero(), num.clone()), Formula::lt(Term::zero(), den.clone()));
                viable(&pre, &sampler, r)
            };
            let (mut num, mut den) = (gen_term(&mut r, &prof), gen_term(&mut r, &prof));
            while !positive(&num, &den, &mut r) {
                (num, den) = (gen_term(&mut r, &prof), gen_term(&mut r, &prof));
            }
            let mut split = rewrite_lambda_quotient(&num, &den);
            if m == Some(Mutation::QuotientSwapValues) && split.cases.len() == 2 {
                let v0 = split.cases[0].1.clone();
                split.cases[0].1 = split.cases[1].1.clone();
                split.cases[1].1 = v0;
            }
            let lam = Term::lambda(Term::div(num.clone(), den.clone()));
            let rhs = split.to_formula(|v| Formula::eq(lam.clone(), v.clone()));
            let pre = Formula::and(Formula::lt(Term::zero(), num), Formula::lt(Term::zero(), den));
            Instance { pre, lhs: Formula::True, rhs, post_ok: true, sampler }
        }
        Lemma::ClearLambdaDivision => {
            let prof = Profile { lambda_nesting: 2, division: true, depth: 1, ..Profile::default() };
            // Only formulas with a quotient under some λ exercise the rewrite.
            let f = (0..1000)
                .map(|_| gen_formula(r.gen(), &prof))
                .find(|f| div_lambda_depth(f) > 0)
                .ok_or_else(|| Error::Contract("no formula with division under λ drawn".into()))?;
            let mut out = clear_lambda_division(&f, &guard)?;
            let post_ok = div_lambda_depth(&out) == 0;
            if m == Some(Mutation::ClearDropDisjunct) {
                out = drop_first_disjunct(&out);
            }
            Instance { pre: Formula::True, lhs: f, rhs: out, post_ok, sampler: any_xy() }
        }
        Lemma::DnOfQuotient => {
            let n = r.gen_range(1..=5u32);
            let mut rhs = dn_of_quotient(n, &x(), &y());
            if m == Some(Mutation::DnQuotientShiftNumerator) {
                rhs = shift_dn_atoms(&rhs, &|t| t.contains_var("x"));
            }
            let lhs = Formula::dn(n, Term::div(x(), y()));
            let pre = Formula::and(Formula::power(x()), Formula::power(y()));
            let sampler: Sampler = Box::new(|r| {
                [(nm("x"), pow2(r.gen_range(-9..=9))), (nm("y"), pow2(r.gen_range(-9..=9)))].into_iter().collect()
            });
            Instance { pre, lhs, rhs, post_ok: true, sampler }
        }
        Lemma::EliminateDivision => {
            let prof = Profile { lambda_nesting: 1, division: true, moduli: vec![2, 3], depth: 1, ..Profile::default() };
            let f = gen_formula(r.gen(), &prof);
            let mut out = eliminate_division(&f, &guard)?;
            let post_ok = out.is_division_free();
            if m == Some(Mutation::DivisionStrictToWeak) {
                out = weaken_first_strict(&out);
            }
            Instance { pre: Formula::True, lhs: f, rhs: out, post_ok, sampler: any_xy() }
        }
        Lemma::LambdaCasesInequality => {
            let p = positive_somewhere(&mut r, 3);
            let nz = p.coeffs.iter().filter(|c| !c.is_zero()).count() as i64;
            let cases: Vec<LambdaCase> = lambda_poly_cases(&p, Mode::Inequality)
                .into_iter()
                .filter(|c| {
                    m != Some(Mutation::CasesDropTopOffset)
                        || !matches!(c, LambdaCase::Monomial { r, .. } if *r == nz - 1)
                })
                .collect();
            let rhs = Formula::disj(cases.iter().map(|c| c.to_formula(&p)).collect());
            let pre = Formula::and(Formula::power(x()), Formula::lt(Term::zero(), p.to_term()));
            let sampler: Sampler = Box::new(|r| poly_env(r));
            Instance { pre, lhs: Formula::True, rhs, post_ok: true, sampler }
        }
        Lemma::LambdaCasesEquality => {
            let p = plantable_poly(&mut r, 3);
            let cases: Vec<LambdaCase> = lambda_poly_cases(&p, Mode::Equality)
                .into_iter()
                .filter(|c| m != Some(Mutation::PinsDropIncreasing) || !matches!(c, LambdaCase::Pin { i, j, .. } if i < j))
                .collect();
            let rhs = Formula::disj(cases.iter().map(|c| c.to_formula(&p)).collect());
            let pre = Formula::conj(vec![
                Formula::power(x()),
                Formula::eq(p.to_term(), Term::zero()),
                some_coeff_nonzero(&p),
            ]);
            let sampler: Sampler = Box::new(move |r| {
                let mut env = poly_env(r);
                let c = -tail_value(&p, &env);
                env.insert(nm("c"), c);
                env
            });
            Instance { pre, lhs: Formula::True, rhs, post_ok: true, sampler }
        }
        Lemma::LambdaPolyMonomial => {
            let p = positive_somewhere(&mut r, 2);
            let mut split = lambda_poly_monomial(&p)?;
            if m == Some(Mutation::MonomialDropLast) {
                split.cases.pop();
            }
            let lam = Term::lambda(p.to_term());
            let covered = Formula::disj(split.guards());
            let values = Formula::conj(
                split
                    .cases
                    .iter()
                    .map(|(g, (s, i))| Formula::implies(g.clone(), Formula::eq(lam.clone(), PolyInX::monomial(s.clone(), &x(), *i))))
                    .collect(),
            );
            let pre = Formula::and(Formula::power(x()), Formula::lt(Term::zero(), p.to_term()));
            let sampler: Sampler = Box::new(|r| poly_env(r));
            Instance { pre, lhs: Formula::True, rhs: Formula::and(covered, values), post_ok: true, sampler }
        }
        Lemma::Squeeze => {
            let prof = Profile { lambda_nesting: 2, depth: 1, ..Profile::default() };
            let f = gen_formula(r.gen(), &prof);
            let out = squeeze_lambda(&f, "x", &guard)?;
            let post_ok = lambda_depth("x", &out) == 0;
            Instance { pre: Formula::power(x()), lhs: f, rhs: out, post_ok, sampler: on_power_x }
        }
        Lemma::DnPolyCases => {
            let p = plantable_poly(&mut r, 2);
            let n = r.gen_range(1..=4u32);
            let rhs = dn_poly_cases(&p, n)?;
            let lhs = Formula::dn(n, p.to_term());
            let sampler: Sampler = Box::new(move |r| {
                let mut env = poly_env(r);
                let c = if r.gen_bool(0.5) { pow2(r.gen_range(-6..=6)) - tail_value(&p, &env) } else { any_value(r) };
                env.insert(nm("c"), c);
                env
            });
            Instance { pre: Formula::power(x()), lhs, rhs, post_ok: true, sampler }
        }
        Lemma::DnMonomialSplit => {
            let n = r.gen_range(2..=5u32);
            let i = r.gen_range(0..=3usize);
            let s = Term::var("s");
            let mut rhs = dn_monomial_split(&s, i, n, "x");
            if m == Some(Mutation::MonomialSplitShiftCoefficient) {
                rhs = shift_dn_atoms(&rhs, &|t| t.contains_var("s"));
            }
            let lhs = Formula::dn(n, PolyInX::monomial(s, &x(), i));
            let sampler: Sampler = Box::new(|r| {
                let s = if r.gen_bool(0.7) { pow2(r.gen_range(-8..=8)) } else { any_value(r) };
                [(nm("x"), pow2(r.gen_range(-8..=8))), (nm("s"), s)].into_iter().collect()
            });
            Instance { pre: Formula::power(x()), lhs, rhs, post_ok: true, sampler }
        }
        Lemma::MakeSimple => {
            let prof = Profile { lambda_nesting: 1, moduli: vec![2, 3], division: true, depth: 1, term_depth: 2, ..Profile::default() };
            let f = gen_formula(r.gen(), &prof);
            let out = make_simple(&f, "x", &guard)?;
            let post_ok = is_simple_in(&out, "x");
            Instance { pre: Formula::power(x()), lhs: f, rhs: out, post_ok, sampler: on_power_x }
        }
    })
}

fn any_xy() -> Sampler {
    Box::new(|r| [(nm("x"), any_value(r)), (nm("y"), any_value(r))].into_iter().collect())
}

/// Runs `instances` instances of `lemma`, each with `samples` precondition-satisfying samples.
pub fn check_lemma_equivalence(
    lemma: Lemma,
    instances: usize,
    samples: usize,
    seed: u64,
    mutation: Option<Mutation>,
) -> LemmaReport {
    let start = Instant::now();
    let mut rep = LemmaReport {
        lemma,
        instances,
        full_instances: 0,
        samples: 0,
        failures: Vec::new(),
        postcondition_violations: 0,
        redrawn: 0,
        millis: 0,
    };
    for k in 0..instances as u64 {
        let iseed = seed.wrapping_mul(1_000_003).wrapping_add(k);
        let failure = |assignment: String, l: Option<bool>, r: Option<bool>, error: Option<String>, inst: Option<&Instance>| Failure {
            lemma,
            instance_seed: iseed,
            lhs: inst.map(|i| i.lhs.to_string()).unwrap_or_default(),
            rhs: inst.map(|i| i.rhs.to_string()).unwrap_or_default(),
            assignment,
            lhs_value: l,
            rhs_value: r,
            error,
        };
        let built = (0..)
            .map(|redraw: u64| (redraw, build(lemma, iseed.wrapping_add(redraw << 32), mutation)))
            .find(|(_, b)| !matches!(b, Err(Error::Blowup { .. })))
            .expect("unbounded search");
        rep.redrawn += built.0 as usize;
        let inst = match built.1 {
            Ok(i) => i,
            Err(e) => {
                rep.failures.push(failure(String::new(), None, None, Some(e.to_string()), None));
                continue;
            }
        };
        if !inst.post_ok {
            rep.postcondition_violations += 1;
        }
        let mut r = rng(iseed ^ 0x5eed);
        let mut good = 0;
        let mut attempts = 0;
        while good < samples && attempts < samples * 40 {
            attempts += 1;
            let env = (inst.sampler)(&mut r);
            match eval_qf(&inst.pre, &env) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(e) => {
                    rep.failures.push(failure(show(&env), None, None, Some(e.to_string()), Some(&inst)));
                    break;
                }
            }
            good += 1;
            let (l, rr) = (eval_qf(&inst.lhs, &env), eval_qf(&inst.rhs, &env));
            match (l, rr) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => {
                    rep.failures.push(failure(show(&env), Some(a), Some(b), None, Some(&inst)));
                    break;
                }
                (l, rr) => {
                    let e = l.err().or(rr.err()).map(|e| e.to_string());
                    rep.failures.push(failure(show(&env), None, None, e, Some(&inst)));
                    break;
                }
            }
        }
        rep.samples += good;
        if good == samples {
            rep.full_instances += 1;
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// All thirteen checks.
pub fn run_suite(instances: usize, samples: usize, seed: u64) -> Vec<LemmaReport> {
    Lemma::ALL.iter().map(|&l| check_lemma_equivalence(l, instances, samples, seed, None)).collect()
}

/// Whether the suite notices `mutation`.
pub fn detects(mutation: Mutation, instances: usize, samples: usize, seed: u64) -> bool {
    let rep = check_lemma_equivalence(mutation.lemma(), instances, samples, seed, Some(mutation));
    !rep.failures.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for rep in run_suite(3, 30, 7) {
            assert!(rep.passed(), "{:?} full {}/{} post {}: {}", rep.lemma, rep.full_instances, rep.instances, rep.postcondition_violations, rep.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n"));
        }
    }
}
