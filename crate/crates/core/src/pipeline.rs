//! The elimination procedure. A block `∃w⃗ ψ` is first rewritten so that every
//! remaining quantified variable ranges over powers of two; those variables
//! are then removed one at a time, innermost first.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::division::eliminate_division;
use crate::error::{Error, Result};
use crate::exponent::{decide_exists_theta, ExponentConstraint, ThetaDecision};
use crate::formula::{fresh_name, Atom, Formula, Literal};
use crate::limits::Guard;
use crate::measure::{length_dn_weighted, length_symbols};
use crate::normal::{dnf_clauses, nnf, prenex, Quantifier};
use crate::polyx::PolyInX;
use crate::rcf::RcfEngine;
use crate::simple::{lambda_poly_cases, make_simple, pin_value, LambdaCase, Mode};
use crate::simplify::{simplify, simplify_powers};
use crate::term::{Name, Term};

/// Measurements taken after one elimination phase. Call counts and times are
/// cumulative over the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationReport {
    pub phase: String,
    pub length_dn_weighted: usize,
    pub length_symbols: usize,
    pub rcf_calls: u64,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthReport {
    pub iterations: Vec<IterationReport>,
    pub result_length: usize,
}

/// One elimination run: guardrails, the memoizing field kernel, fresh names
/// and the growth report so far.
pub struct Engine<'g, 'c> {
    guard: &'g Guard<'c>,
    rcf: RcfEngine,
    rcf_requests: u64,
    avoid: BTreeSet<Name>,
    pin: Name,
    wide: Name,
    memo: BTreeMap<(Name, Vec<Literal>), Formula>,
    /// Variables bound to powers of two by enclosing quantifiers.
    scope: BTreeSet<Name>,
    pub report: GrowthReport,
}

fn ceil_log2(n: usize) -> i64 {
    let mut c = 0;
    while (1usize << c) < n {
        c += 1;
    }
    c
}

/// Top-level conjuncts of the form `D_n(x)`, which force `x` to be a power of two.
fn has_power_conjunct(f: &Formula, x: &str) -> bool {
    f.conjuncts().into_iter().any(|c| matches!(c, Formula::Atom(Atom::Dn { arg: Term::Var(v), .. }) if &**v == x))
}

/// A `λ(t)` with `x` in `t` and no such `λ` inside `t`.
fn innermost_lambda(t: &Term, x: &str) -> Option<Term> {
    match t {
        Term::Var(_) | Term::Const(_) | Term::Pow2(_) => None,
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
            innermost_lambda(a, x).or_else(|| innermost_lambda(b, x))
        }
        Term::Lambda(s) => innermost_lambda(s, x).or_else(|| s.contains_var(x).then(|| t.clone())),
    }
}

fn find_lambda(f: &Formula, x: &str) -> Option<Term> {
    let mut found = None;
    f.visit_atoms(&mut |a| {
        if found.is_none() {
            found = a.terms().iter().flatten().find_map(|t| innermost_lambda(t, x));
        }
    });
    found
}

impl<'g, 'c> Engine<'g, 'c> {
    pub fn new(guard: &'g Guard<'c>, input: &Formula) -> Self {
        let mut avoid = input.all_names();
        let pin = fresh_name("s", &avoid);
        avoid.insert(pin.clone());
        let wide = fresh_name("u", &avoid);
        avoid.insert(wide.clone());
        Engine {
            guard,
            rcf: RcfEngine::new(),
            rcf_requests: 0,
            avoid,
            pin,
            wide,
            memo: BTreeMap::new(),
            scope: BTreeSet::new(),
            report: GrowthReport::default(),
        }
    }

    fn fresh(&mut self, base: &str) -> Name {
        let n = fresh_name(base, &self.avoid);
        self.avoid.insert(n.clone());
        n
    }

    fn qe_rcf(&mut self, f: &Formula) -> Result<Formula> {
        self.rcf_requests += 1;
        self.rcf.qe(f, self.guard)
    }

    /// Number of requests made to the field kernel, cache hits included.
    pub fn rcf_calls(&self) -> u64 {
        self.rcf_requests
    }

    fn record(&mut self, phase: String, f: &Formula) {
        self.report.iterations.push(IterationReport {
            phase,
            length_dn_weighted: length_dn_weighted(f),
            length_symbols: length_symbols(f),
            rcf_calls: self.rcf_requests,
            millis: self.guard.elapsed_millis(),
        });
    }

    /// Rewrites `∃x ψ` as `∃x ∃z⃗ (A(z⃗) ∧ body)` where `x` occurs in `body`
    /// neither under `λ` nor in a `D_n` atom. Returns `z⃗` and `body`.
    pub fn eliminate_lambda_from_existential(&mut self, x: &str, psi: &Formula) -> Result<(Vec<Name>, Formula)> {
        let f = eliminate_division(psi, self.guard)?;
        // D_n(t) holds iff 0 < t = λ(t) and D_n(λ(t)); the λ is then flattened.
        let mut f = f.map_atoms(&mut |a| match a {
            Atom::Dn { n, arg } if arg.contains_var(x) => Formula::conj(vec![
                Formula::lt(Term::zero(), arg.clone()),
                Formula::eq(arg.clone(), Term::lambda(arg.clone())),
                Formula::dn(*n, Term::lambda(arg.clone())),
            ]),
            _ => Formula::Atom(a.clone()),
        });
        let mut zs = Vec::new();
        while let Some(l) = find_lambda(&f, x) {
            let Term::Lambda(t) = &l else { unreachable!() };
            let t = (**t).clone();
            let z = self.fresh("z");
            let zt = Term::Var(z.clone());
            let low = Formula::and(Formula::le(t.clone(), Term::zero()), f.replace_term(&l, &Term::zero()));
            let window = Formula::conj(vec![
                Formula::le(zt.clone(), t.clone()),
                Formula::lt(t.clone(), Term::shifted(1, zt.clone())),
                f.replace_term(&l, &zt),
            ]);
            f = simplify(&Formula::or(low, window));
            self.guard.check_size(&f)?;
            zs.push(z);
        }
        Ok((zs, f))
    }

    /// Rewrites `∃w⃗ ψ` as `∃x⃗ (A(x⃗) ∧ φ)`. Variables with a top-level `D_n`
    /// conjunct are kept; the others are flattened and removed by the field
    /// kernel. Returns `x⃗` (innermost last) and `φ`.
    pub fn step1_to_a_prefix(&mut self, ws: &[Name], psi: &Formula) -> Result<(Vec<Name>, Formula)> {
        let mut f = eliminate_division(psi, self.guard)?;
        let mut powers = Vec::new();
        for w in ws.iter().rev() {
            if !f.contains_var(w) {
                continue;
            }
            if has_power_conjunct(&f, w) {
                powers.push(w.clone());
                continue;
            }
            let (zs, body) = self.eliminate_lambda_from_existential(w, &f)?;
            f = self.qe_rcf(&Formula::Exists(w.clone(), body.into()))?;
            powers.extend(zs);
        }
        powers.reverse();
        Ok((powers, f))
    }

    /// `∃x (A(x) ∧ φ)` as a quantifier-free, division-free formula.
    pub fn step2_eliminate_a(&mut self, x: &Name, phi: &Formula) -> Result<Formula> {
        if !phi.contains_var(x) {
            return eliminate_division(phi, self.guard);
        }
        let mut scope = self.scope.clone();
        scope.insert(x.clone());
        let phi = simplify_powers(phi, &scope);
        let psi = make_simple(&phi, x, self.guard)?;
        let clauses = dnf_clauses(&nnf(&psi), self.guard.limits.dnf_cap)?;
        let mut out = Vec::with_capacity(clauses.len());
        for c in clauses {
            let (with, rest): (Vec<Literal>, Vec<Literal>) = c.into_iter().partition(|l| l.atom.contains_var(x));
            let key = (x.clone(), with);
            let e = match self.memo.get(&key) {
                Some(e) => e.clone(),
                None => {
                    let e = self.eliminate_clause(x, &key.1)?;
                    self.memo.insert(key, e.clone());
                    e
                }
            };
            out.push(Formula::and2(Formula::conj(rest.iter().map(Literal::to_formula).collect()), e));
            self.guard.check_time()?;
        }
        scope.remove(x);
        let f = simplify_powers(&Formula::disj(out), &scope);
        let f = simplify_powers(&eliminate_division(&f, self.guard)?, &scope);
        self.guard.check_size(&f)?;
        Ok(f)
    }

    /// `∃x (A(x) ∧ ⋀ lits)` for literals of a formula simple in `x`.
    fn eliminate_clause(&mut self, x: &Name, lits: &[Literal]) -> Result<Formula> {
        let mut side = Vec::new();
        let mut eqs: Vec<(usize, PolyInX)> = Vec::new();
        let mut ineqs: Vec<PolyInX> = Vec::new();
        let mut theta = Vec::new();
        for (k, l) in lits.iter().enumerate() {
            match (&l.atom, l.positive) {
                (Atom::Dn { .. }, _) => theta.push(l.to_formula()),
                (Atom::Eq(p, z), true) if z.is_zero() => {
                    let p = PolyInX::from_term(p, x)?;
                    if p.degree() == 0 {
                        side.push(Formula::eq(p.coeffs[0].clone(), Term::zero()));
                    } else {
                        eqs.push((k, p));
                    }
                }
                (Atom::Lt(z, q), true) if z.is_zero() => {
                    let q = PolyInX::from_term(q, x)?;
                    if q.degree() == 0 {
                        side.push(Formula::lt(Term::zero(), q.coeffs[0].clone()));
                    } else {
                        ineqs.push(q);
                    }
                }
                _ => return Err(Error::Invariant(format!("literal not in simple form: {}", l.to_formula()))),
            }
        }
        let side = Formula::conj(side);
        if let Some((k, p)) = eqs.iter().min_by_key(|(_, p)| p.degree()).cloned() {
            // Either every coefficient vanishes or x is pinned by two balancing monomials.
            let mut others = lits.to_vec();
            others.remove(k);
            let vanish = simplify(&Formula::conj(p.coeffs.iter().map(|c| Formula::eq(c.clone(), Term::zero())).collect()));
            let zero = if vanish == Formula::False {
                Formula::False
            } else {
                Formula::and(vanish, self.eliminate_clause(x, &others)?)
            };
            let mut pins = Vec::new();
            for case in lambda_poly_cases(&p, Mode::Equality) {
                if let LambdaCase::Pin { e, value, .. } = case {
                    pins.push(self.pinned(x, e, &value, lits)?);
                }
            }
            return Ok(simplify(&Formula::and(side, Formula::or(zero, Formula::disj(pins)))));
        }
        let constraint = ExponentConstraint::from_formula(&Formula::conj(theta), x)?;
        let period = match decide_exists_theta(&constraint) {
            ThetaDecision::Unsat => return Ok(Formula::False),
            ThetaDecision::Sat { period } => period,
        };
        if ineqs.is_empty() {
            return Ok(side);
        }
        let large = self.large_interval(x, &ineqs, period)?;
        let mut candidates = BTreeSet::new();
        for q in &ineqs {
            let nz: Vec<usize> = (0..q.coeffs.len()).filter(|&i| !q.coeffs[i].is_zero()).collect();
            if nz.len() < 2 {
                continue;
            }
            let m = nz.len() - 1;
            for &i in &nz {
                for &j in &nz {
                    if i == j {
                        continue;
                    }
                    let e = i.abs_diff(j);
                    for k in trapped_window(m, period, e) {
                        candidates.insert((e, pin_value(q, k, i, j)));
                    }
                }
            }
        }
        let mut trapped = Vec::with_capacity(candidates.len());
        for (e, v) in candidates {
            trapped.push(self.pinned(x, e, &v, lits)?);
            self.guard.check_time()?;
        }
        Ok(simplify(&Formula::and(side, Formula::or(large, Formula::disj(trapped)))))
    }

    /// `∃x (A(x) ∧ x^e = v ∧ ⋀ lits)`. The positive root of `x^e = v` is
    /// unique, so the `D_n` literals transfer to `v` and the rest is a query
    /// to the field kernel with `v` as a parameter.
    fn pinned(&mut self, x: &Name, e: usize, v: &Term, lits: &[Literal]) -> Result<Formula> {
        let mut parts = vec![Formula::dn(e as u32, v.clone())];
        let mut field = vec![
            Formula::lt(Term::zero(), Term::Var(x.clone())),
            Formula::eq(Term::power(&Term::Var(x.clone()), e as u32), Term::Var(self.pin.clone())),
        ];
        for l in lits {
            match &l.atom {
                Atom::Dn { .. } => match ExponentConstraint::from_formula(&Formula::Atom(l.atom.clone()), x)? {
                    ExponentConstraint::Atom { n, s } => {
                        let a = Formula::dn(n * e as u32, Term::shifted(s * e as i64, v.clone()));
                        parts.push(if l.positive { a } else { Formula::not(a) });
                    }
                    _ => unreachable!("a single atom"),
                },
                _ => field.push(l.to_formula()),
            }
        }
        let q = self.qe_rcf(&Formula::Exists(x.clone(), Formula::conj(field).into()))?;
        parts.push(q.substitute(&self.pin, v));
        Ok(Formula::conj(parts))
    }

    /// Some `[u, 2^M u]` with `u > 0` on which every `q` is positive.
    fn large_interval(&mut self, x: &Name, ineqs: &[PolyInX], period: u64) -> Result<Formula> {
        let u = Term::Var(self.wide.clone());
        if ineqs.iter().all(|q| q.degree() <= 1) {
            // A linear function is positive on a closed interval iff it is at both ends.
            let top = Term::mul(Term::pow2(period as i64), u.clone());
            let mut ends = vec![Formula::lt(Term::zero(), u.clone())];
            for q in ineqs {
                let t = q.to_term();
                ends.push(Formula::lt(Term::zero(), t.subst(x, &u)));
                ends.push(Formula::lt(Term::zero(), t.subst(x, &top)));
            }
            return self.qe_rcf(&Formula::Exists(self.wide.clone(), Formula::conj(ends).into()));
        }
        let xv = Term::Var(x.clone());
        let within = Formula::and(
            Formula::le(u.clone(), xv.clone()),
            Formula::le(xv, Term::mul(Term::pow2(period as i64), u.clone())),
        );
        let pos = Formula::conj(ineqs.iter().map(|q| Formula::lt(Term::zero(), q.to_term())).collect());
        let body = Formula::and(
            Formula::lt(Term::zero(), u),
            Formula::forall(x, Formula::implies(within, pos)),
        );
        self.qe_rcf(&Formula::Exists(self.wide.clone(), body.into()))
    }

    /// A quantifier-free, division-free equivalent of `∃w⃗ ψ`.
    pub fn eliminate_block(&mut self, ws: &[Name], psi: &Formula) -> Result<Formula> {
        let (powers, f) = self.step1_to_a_prefix(ws, psi)?;
        let outer = core::mem::replace(&mut self.scope, powers.iter().cloned().collect());
        let mut f = simplify_powers(&f, &self.scope);
        self.record(String::from("step1"), &f);
        for x in powers.iter().rev() {
            self.scope.remove(x);
            f = self.step2_eliminate_a(x, &f)?;
            self.record(format!("step2 {x}"), &f);
        }
        self.scope = outer;
        Ok(simplify(&eliminate_division(&f, self.guard)?))
    }

    /// A quantifier-free, division-free equivalent of `φ`.
    pub fn eliminate_all(&mut self, phi: &Formula) -> Result<Formula> {
        let (prefix, matrix) = prenex(phi);
        let mut f = simplify(&eliminate_division(&matrix, self.guard)?);
        let mut end = prefix.len();
        while end > 0 {
            let q = prefix[end - 1].0;
            let mut start = end - 1;
            while start > 0 && prefix[start - 1].0 == q {
                start -= 1;
            }
            let names: Vec<Name> = prefix[start..end].iter().map(|(_, n)| n.clone()).collect();
            f = match q {
                Quantifier::Exists => self.eliminate_block(&names, &f)?,
                Quantifier::Forall => simplify(&Formula::negate(self.eliminate_block(&names, &nnf(&Formula::negate(f)))?)),
            };
            end = start;
        }
        self.report.result_length = length_symbols(&f);
        Ok(f)
    }
}

/// Exponents `k` with `x^e = 2^k R` for a power of two `x` lying within a
/// factor `2^M` above a positive root of a polynomial with `m + 1` nonzero
/// terms, where `R` is the ratio of `λ`s of two balancing coefficients.
fn trapped_window(m: usize, period: u64, e: usize) -> core::ops::RangeInclusive<i64> {
    let lo = -ceil_log2(2 * m);
    let hi = period as i64 * e as i64 + 1 + ceil_log2(m);
    lo..=hi
}

/// A quantifier-free, division-free equivalent of `φ`, with its growth report.
/// The report is returned on failure too.
pub fn eliminate_all_with_report(phi: &Formula, guard: &Guard) -> (Result<Formula>, GrowthReport) {
    let mut engine = Engine::new(guard, phi);
    let out = engine.eliminate_all(phi);
    (out, engine.report)
}

pub fn eliminate_all(phi: &Formula, guard: &Guard) -> Result<Formula> {
    eliminate_all_with_report(phi, guard).0
}

/// Decides a sentence by elimination followed by ground evaluation.
pub fn decide(phi: &Formula, guard: &Guard) -> Result<bool> {
    if let Some(v) = phi.free_vars().into_iter().next() {
        return Err(Error::Unbound(format!("{v}")));
    }
    crate::eval::decide_ground_sentence(&eliminate_all(phi, guard)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, Assignment};
    use crate::rational::{int, ratio};

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    fn a(t: Term) -> Formula {
        Formula::power(t)
    }

    fn dec(f: &Formula) -> bool {
        decide(f, &Guard::default()).unwrap()
    }

    #[test]
    fn power_window_and_square() {
        let x = v("x");
        let f = Formula::exists("x", Formula::conj(vec![a(x.clone()), Formula::lt(Term::int(3), x.clone()), Formula::lt(x.clone(), Term::int(5))]));
        assert!(dec(&f));
        let f = Formula::exists("x", Formula::conj(vec![a(x.clone()), Formula::lt(Term::int(4), x.clone()), Formula::lt(x.clone(), Term::int(8))]));
        assert!(!dec(&f));
        let f = Formula::exists("x", Formula::and(a(x.clone()), Formula::eq(x.clone() * x.clone(), Term::int(2))));
        assert!(!dec(&f));
        let f = Formula::exists("x", Formula::and(a(x.clone()), Formula::eq(x.clone() * x.clone(), Term::rat(1, 16))));
        assert!(dec(&f));
    }

    #[test]
    fn real_variables() {
        let w = v("w");
        assert!(dec(&Formula::exists("w", Formula::eq(w.clone() * w.clone(), Term::int(2)))));
        assert!(dec(&Formula::exists("w", Formula::eq(w.clone(), Term::zero()))));
        assert!(dec(&Formula::exists("w", Formula::eq(Term::lambda(w.clone()), Term::int(2)))));
        assert!(!dec(&Formula::exists("w", Formula::eq(Term::lambda(w.clone()), Term::int(3)))));
        let f = Formula::exists("w", Formula::dn(2, w.clone() + Term::one()));
        assert!(dec(&f));
        let (u, vv) = (v("u"), v("v"));
        let f = Formula::exists(
            "u",
            Formula::exists(
                "v",
                Formula::conj(vec![
                    Formula::eq(u.clone() + vv.clone(), Term::int(3)),
                    Formula::lt(Term::zero(), u.clone()),
                    Formula::lt(Term::zero(), vv.clone()),
                ]),
            ),
        );
        assert!(dec(&f));
        let f = Formula::exists("u", Formula::conj(vec![a(u.clone()), Formula::dn(2, u.clone()), Formula::lt(u.clone(), Term::int(3))]));
        assert!(dec(&f));
    }

    #[test]
    fn density_axiom() {
        let (x, y) = (v("x"), v("y"));
        let inner = Formula::exists(
            "y",
            Formula::conj(vec![a(y.clone()), Formula::le(y.clone(), x.clone()), Formula::lt(x.clone(), Term::shifted(1, y.clone()))]),
        );
        let f = Formula::forall("x", Formula::implies(Formula::lt(Term::zero(), x.clone()), inner));
        assert!(dec(&f));
    }

    #[test]
    fn unbounded_powers() {
        let (x, y) = (v("x"), v("y"));
        let f = Formula::exists("x", Formula::and(a(x.clone()), Formula::lt(y.clone(), x.clone())));
        let q = eliminate_all(&f, &Guard::default()).unwrap();
        assert!(q.is_quantifier_free() && q.is_division_free());
        for yv in [int(-5), int(0), ratio(7, 3), int(1000)] {
            let env: Assignment = [(Name::from("y"), yv)].into_iter().collect();
            assert!(eval_qf(&q, &env).unwrap());
        }
    }

    #[test]
    fn report_counts() {
        let (x, y) = (v("x"), v("y"));
        let one = Formula::exists("x", Formula::and(a(x.clone()), Formula::lt(y.clone(), x.clone() * x.clone())));
        let (_, r) = eliminate_all_with_report(&one, &Guard::default());
        assert!(r.iterations.iter().any(|i| i.phase.starts_with("step2")));
        let (_, r) = eliminate_all_with_report(&Formula::lt(x.clone(), y.clone()), &Guard::default());
        assert!(r.iterations.is_empty());
    }
}
