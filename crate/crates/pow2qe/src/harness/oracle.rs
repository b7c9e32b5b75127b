//! An independent decision procedure for test sentences.
//!
//! It never calls the elimination pipeline. Quantifiers are handled by cases:
//!
//! * innermost real variable, polynomial occurrences: Sturm sequences over
//!   the DNF clauses (exact);
//! * innermost variable guarded by `D_n(x)`: enumeration of `x = 2^k` over a
//!   range derived from root bounds and the moduli (exact);
//! * innermost real variable under `λ` or `D_n` with linear arguments:
//!   decomposition into cells where every such `λ` is constant (exact unless
//!   a cell is left unresolved at the extreme scales);
//! * an outer real variable over one polynomial inner quantifier: cells of a
//!   resultant projection (exact when all critical points are rational);
//! * anything else: enumeration over a fixed grid (inexact).
//!
//! Every answer carries an `exact` flag.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pow2qe_core::eval::{eval_atom, eval_qf, eval_term, univariate, Assignment};
use pow2qe_core::normal::{dnf_clauses, nnf};
use pow2qe_core::rational::{floor_log2, int, lambda, lcm_u64, pow2};
use pow2qe_core::term::Name;
use pow2qe_core::upoly::{exists_univariate, refine, Rel, RootInterval, UPoly};
use pow2qe_core::{Atom, Formula, Literal, Term};

use super::sample::ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    /// The value is proven rather than observed on finitely many samples.
    pub exact: bool,
}

impl Verdict {
    fn exact(value: bool) -> Verdict {
        Verdict { value, exact: true }
    }

    fn not(self) -> Verdict {
        Verdict { value: !self.value, ..self }
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// `x = 2^k`, `|k| <=` this, when an exact power range is unavailable.
    pub power_span: i64,
    /// Same for power-guarded variables with further quantifiers inside.
    pub outer_power_span: i64,
    /// Scales `2^j`, `|j| <=` this, at which `λ` cells are cut.
    pub lambda_span: i64,
    /// Largest exact power range enumerated.
    pub max_exact_span: i64,
    /// Literal cap for DNF conversions.
    pub dnf_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { power_span: 40, outer_power_span: 12, lambda_span: 12, max_exact_span: 4000, dnf_cap: 200_000 }
    }
}

pub type OracleResult = Result<Verdict, String>;

/// Decides the sentence `f` (or `f` under `env` when it has free variables).
pub fn oracle_decide(f: &Formula, env: &Assignment, cfg: &OracleConfig) -> OracleResult {
    Oracle { cfg }.eval(f, env)
}

struct Oracle<'a> {
    cfg: &'a OracleConfig,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Some top-level conjunct is `D_n(x)`, possibly below further existentials.
fn power_guard(body: &Formula, x: &str) -> Option<u32> {
    if let Formula::Exists(y, inner) = body {
        return if &**y == x { None } else { power_guard(inner, x) };
    }
    body.conjuncts().iter().find_map(|c| match c {
        Formula::Atom(Atom::Dn { n, arg: Term::Var(v) }) if &**v == x => Some(*n),
        _ => None,
    })
}

fn with(env: &Assignment, x: &str, v: BigRational) -> Assignment {
    let mut e = env.clone();
    e.insert(Name::from(x), v);
    e
}

fn ceil_log2(q: &BigRational) -> i64 {
    let f = floor_log2(q);
    if pow2(f) == *q {
        f
    } else {
        f + 1
    }
}

/// Outer sample values for real variables.
fn grid() -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    let base: Vec<BigRational> = [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (3, 2), (5, 2), (4, 1), (5, 1), (7, 1), (8, 1)]
        .iter()
        .map(|&(n, d)| ratio(n, d))
        .chain([(1, 4), (1, 8), (10, 1), (16, 1), (100, 1)].iter().map(|&(n, d)| ratio(n, d)))
        .chain([pow2(10), pow2(-10), ratio(7, 3), ratio(2, 3)])
        .collect();
    for b in base {
        out.push(-b.clone());
        out.push(b);
    }
    out
}

impl Oracle<'_> {
    fn eval(&self, f: &Formula, env: &Assignment) -> OracleResult {
        if f.is_quantifier_free() {
            return eval_qf(f, env).map(Verdict::exact).map_err(err);
        }
        match f {
            Formula::Not(a) => Ok(self.eval(a, env)?.not()),
            Formula::And(a, b) => {
                let va = self.eval(a, env)?;
                if va.exact && !va.value {
                    return Ok(va);
                }
                let vb = self.eval(b, env)?;
                if vb.exact && !vb.value {
                    return Ok(vb);
                }
                Ok(Verdict { value: va.value && vb.value, exact: va.exact && vb.exact })
            }
            Formula::Or(a, b) => Ok(self.eval(&Formula::and(Formula::not((**a).clone()), Formula::not((**b).clone())), env)?.not()),
            Formula::Exists(x, body) => self.exists(x, body, env),
            Formula::Forall(x, body) => Ok(self.exists(x, &nnf(&Formula::not((**body).clone())), env)?.not()),
            _ => unreachable!("quantifier-free cases handled above"),
        }
    }

    fn exists(&self, x: &str, body: &Formula, env: &Assignment) -> OracleResult {
        let guard = power_guard(body, x);
        if body.is_quantifier_free() {
            return self.innermost(x, body, env, guard.is_some());
        }
        if guard.is_none() {
            if let Some(v) = self.linear_elimination(x, body, env)? {
                return Ok(v);
            }
            if let Some(v) = self.bivariate(x, body, env)? {
                return Ok(v);
            }
        }
        let candidates: Vec<BigRational> = match guard {
            Some(_) => (-self.cfg.outer_power_span..=self.cfg.outer_power_span).map(pow2).collect(),
            None => grid(),
        };
        self.over(x, body, env, candidates, false)
    }

    /// `∃x` over a finite candidate set; `exhaustive` when the set is complete.
    fn over(&self, x: &str, body: &Formula, env: &Assignment, vals: Vec<BigRational>, exhaustive: bool) -> OracleResult {
        let mut all_exact = true;
        let mut any = false;
        for v in vals {
            let r = self.eval(body, &with(env, x, v))?;
            if r.value && r.exact {
                return Ok(r);
            }
            any |= r.value;
            all_exact &= r.exact;
        }
        Ok(Verdict { value: any, exact: exhaustive && all_exact && !any })
    }

    fn innermost(&self, x: &str, phi: &Formula, env: &Assignment, guarded: bool) -> OracleResult {
        if guarded {
            return match self.power_range(x, phi, env) {
                Some((lo, hi)) => self.over(x, phi, env, (lo..=hi).map(pow2).collect(), true),
                None => {
                    let span = self.cfg.power_span;
                    self.over(x, phi, env, (-span..=span).map(pow2).collect(), false)
                }
            };
        }
        if let Some(v) = self.sturm(x, phi, env)? {
            return Ok(Verdict::exact(v));
        }
        if let Some(v) = self.lambda_cells(x, phi, env)? {
            return Ok(v);
        }
        self.over(x, phi, env, grid(), false)
    }

    /// Exponent range containing a witness whenever one exists, when `x` is
    /// polynomial in every order atom and monomial in every `D_n` atom.
    fn power_range(&self, x: &str, phi: &Formula, env: &Assignment) -> Option<(i64, i64)> {
        let mut ok = true;
        let mut period = 1u64;
        let mut polys = Vec::new();
        phi.visit_atoms(&mut |a| {
            if !ok || !a.contains_var(x) {
                return;
            }
            match a {
                Atom::Eq(l, r) | Atom::Lt(l, r) => match univariate(&Term::sub(l.clone(), r.clone()), x, env) {
                    Some(p) => polys.push(p),
                    None => ok = false,
                },
                Atom::Dn { n, arg } => match univariate(arg, x, env) {
                    Some(p) if p.0.iter().filter(|c| !c.is_zero()).count() <= 1 => period = lcm_u64(period, *n as u64),
                    _ => ok = false,
                },
            }
        });
        if !ok {
            return None;
        }
        let period = period as i64;
        let (mut lo, mut hi) = (0i64, 0i64);
        for p in polys.iter().filter(|p| p.degree() >= 1) {
            hi = hi.max(ceil_log2(&p.root_bound()));
            let low = p.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
            let rev = UPoly::new(p.0[low..].iter().rev().cloned().collect());
            if rev.degree() >= 1 {
                lo = lo.min(-ceil_log2(&rev.root_bound()));
            }
        }
        let (lo, hi) = (lo - period - 1, hi + period + 1);
        (hi - lo <= self.cfg.max_exact_span).then_some((lo, hi))
    }

    /// Literal of a clause as a univariate sign condition, or a constant.
    fn literal(&self, lit: &Literal, x: &str, env: &Assignment) -> Result<Option<Result<(UPoly, Rel), bool>>, String> {
        if !lit.atom.contains_var(x) {
            let v = eval_atom(&lit.atom, env).map_err(err)?;
            return Ok(Some(Err(v == lit.positive)));
        }
        let (t, rel) = match &lit.atom {
            Atom::Eq(l, r) => (Term::sub(l.clone(), r.clone()), if lit.positive { Rel::Eq } else { Rel::Ne }),
            Atom::Lt(l, r) => (Term::sub(r.clone(), l.clone()), if lit.positive { Rel::Gt } else { Rel::Le }),
            Atom::Dn { .. } => return Ok(None),
        };
        Ok(univariate(&t, x, env).map(|p| Ok((p, rel))))
    }

    /// Exact decision when `x` occurs only polynomially.
    fn sturm(&self, x: &str, phi: &Formula, env: &Assignment) -> Result<Option<bool>, String> {
        let clauses = dnf_clauses(&nnf(phi), self.cfg.dnf_cap).map_err(err)?;
        let mut systems = Vec::new();
        for clause in &clauses {
            let mut lits = Vec::new();
            let mut dead = false;
            for lit in clause {
                match self.literal(lit, x, env)? {
                    None => return Ok(None),
                    Some(Err(true)) => {}
                    Some(Err(false)) => dead = true,
                    Some(Ok(l)) => lits.push(l),
                }
            }
            if !dead {
                systems.push(lits);
            }
        }
        Ok(Some(systems.iter().any(|lits| exists_univariate(lits))))
    }

    /// Cells on which every `λ(t)` with `t` linear in `x` is constant and
    /// every `D_n(t)` is false; their ends are decided pointwise.
    fn lambda_cells(&self, x: &str, phi: &Formula, env: &Assignment) -> Result<Option<Verdict>, String> {
        let mut args: Vec<Term> = Vec::new();
        let mut ok = true;
        phi.visit_atoms(&mut |a| {
            if let Atom::Dn { arg, .. } = a {
                if arg.contains_var(x) {
                    args.push(arg.clone());
                }
            }
            for t in a.terms().iter().flatten() {
                t.visit(&mut |s| {
                    if let Term::Lambda(u) = s {
                        if u.contains_var(x) {
                            args.push((**u).clone());
                        }
                    }
                });
            }
        });
        let mut lines = Vec::new();
        for t in &args {
            match univariate(t, x, env) {
                Some(p) if p.degree() == 1 => lines.push((t.clone(), p)),
                _ => ok = false,
            }
        }
        if !ok || lines.is_empty() {
            return Ok(None);
        }
        let s = self.cfg.lambda_span;
        let mut cuts: Vec<BigRational> = Vec::new();
        for (_, p) in &lines {
            let (b, a) = (&p.0[0], &p.0[1]);
            cuts.push(-b / a);
            for j in -s..=s {
                cuts.push((pow2(j) - b) / a);
            }
        }
        cuts.sort();
        cuts.dedup();
        let small = pow2(-s);
        let big = pow2(s);
        let mut unresolved = false;
        for c in &cuts {
            if eval_qf(phi, &with(env, x, c.clone())).map_err(err)? {
                return Ok(Some(Verdict::exact(true)));
            }
        }
        let one = BigRational::one();
        let mut cells: Vec<(Option<BigRational>, Option<BigRational>)> = vec![(None, Some(cuts[0].clone()))];
        cells.extend(cuts.windows(2).map(|w| (Some(w[0].clone()), Some(w[1].clone()))));
        cells.push((Some(cuts[cuts.len() - 1].clone()), None));
        for (lo, hi) in cells {
            let mid = match (&lo, &hi) {
                (Some(a), Some(b)) => (a + b) / int(2),
                (None, Some(b)) => b - &one,
                (Some(a), None) => a + &one,
                (None, None) => unreachable!(),
            };
            let menv = with(env, x, mid.clone());
            let mut cell = phi.clone();
            let mut uncertain = false;
            for (t, _) in &lines {
                let v = eval_term(t, &menv).map_err(err)?;
                if v.is_positive() && (v < small || v > big) {
                    uncertain = true;
                }
                let lt = Term::lambda(t.clone());
                cell = cell.replace_term(&lt, &Term::constant(lambda(&v)));
            }
            cell = cell.map_atoms(&mut |a| match a {
                Atom::Dn { arg, .. } if arg.contains_var(x) => Formula::False,
                a => Formula::Atom(a.clone()),
            });
            let xt = Term::var(x);
            let mut bounds = Vec::new();
            if let Some(a) = &lo {
                bounds.push(Formula::lt(Term::constant(a.clone()), xt.clone()));
            }
            if let Some(b) = &hi {
                bounds.push(Formula::lt(xt.clone(), Term::constant(b.clone())));
            }
            let restricted = Formula::and(Formula::conj(bounds.clone()), cell);
            if uncertain {
                // Probe the cell at its midpoint and at dyadic scales inside it.
                let mut probes = vec![mid];
                probes.extend((-3 * s..=3 * s).flat_map(|j| [pow2(j), -pow2(j)]));
                for v in probes {
                    let penv = with(env, x, v);
                    if eval_qf(&Formula::conj(bounds.clone()), &penv).map_err(err)? && eval_qf(phi, &penv).map_err(err)? {
                        return Ok(Some(Verdict::exact(true)));
                    }
                }
                unresolved = true;
                continue;
            }
            match self.sturm(x, &restricted, env)? {
                Some(true) => return Ok(Some(Verdict::exact(true))),
                Some(false) => {}
                None => return Ok(None),
            }
        }
        Ok(Some(Verdict { value: false, exact: !unresolved }))
    }

    /// `∃x ∃y ψ` where a top-level conjunct of `ψ` is an equation linear in
    /// one of the variables with a constant coefficient: that variable is
    /// solved for, leaving one exact univariate problem.
    fn linear_elimination(&self, x: &str, body: &Formula, env: &Assignment) -> Result<Option<Verdict>, String> {
        let Formula::Exists(y, psi) = body else { return Ok(None) };
        if !psi.is_quantifier_free() {
            return Ok(None);
        }
        for (solve, keep) in [(&**y, x), (x, &**y)] {
            for c in psi.conjuncts() {
                let Formula::Atom(Atom::Eq(l, r)) = c else { continue };
                let Some(p) = bivariate_poly(&Term::sub(l.clone(), r.clone()), keep, solve, env) else { continue };
                if p.len() != 2 || p[1].degree() != 0 || p[1].is_zero() {
                    continue;
                }
                // solve = -p0(keep) / p1
                let k = Term::var(keep);
                let p0 = p[0].0.iter().enumerate().fold(Term::zero(), |acc, (i, c)| {
                    Term::add(acc, Term::mul(Term::constant(c.clone()), Term::power(&k, i as u32)))
                });
                let value = Term::mul(Term::constant(-p[1].0[0].recip()), p0);
                let reduced = psi.substitute(solve, &value);
                return self.innermost(keep, &reduced, env, false).map(Some);
            }
        }
        Ok(None)
    }

    /// `∃x Q y ψ(x, y)` with `ψ` polynomial in `x` and `y`.
    fn bivariate(&self, x: &str, body: &Formula, env: &Assignment) -> Result<Option<Verdict>, String> {
        let (y, inner, forall) = match body {
            Formula::Exists(y, b) => (y.clone(), (**b).clone(), false),
            Formula::Forall(y, b) => (y.clone(), (**b).clone(), true),
            _ => return Ok(None),
        };
        if !inner.is_quantifier_free() {
            return Ok(None);
        }
        let mut polys = Vec::new();
        let mut ok = true;
        inner.visit_atoms(&mut |a| {
            if !ok || !(a.contains_var(x) || a.contains_var(&y)) {
                return;
            }
            match a {
                Atom::Eq(l, r) | Atom::Lt(l, r) => match bivariate_poly(&Term::sub(l.clone(), r.clone()), x, &y, env) {
                    Some(p) => polys.push(p),
                    None => ok = false,
                },
                Atom::Dn { .. } => ok = false,
            }
        });
        if !ok {
            return Ok(None);
        }
        let (points, exact) = projection_samples(&polys);
        let inner_q = if forall { Formula::Forall(y.clone(), inner.into()) } else { Formula::Exists(y.clone(), inner.into()) };
        let v = self.over(x, &inner_q, env, points, exact)?;
        Ok(Some(v))
    }
}

/// A polynomial in `y` with coefficients in `x`.
type BPoly = Vec<UPoly>;

fn bivariate_poly(t: &Term, x: &str, y: &str, env: &Assignment) -> Option<BPoly> {
    let trim = |mut p: BPoly| {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    };
    let add = |a: &BPoly, b: &BPoly, sign: bool| {
        let n = a.len().max(b.len());
        let z = UPoly::default();
        trim((0..n)
            .map(|i| {
                let (u, v) = (a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z));
                if sign {
                    u.add(v)
                } else {
                    u.sub(v)
                }
            })
            .collect())
    };
    if !t.contains_var(y) {
        return univariate(t, x, env).map(|p| vec![p]);
    }
    Some(match t {
        Term::Var(_) => vec![UPoly::default(), UPoly::constant(BigRational::one())],
        Term::Add(a, b) => add(&bivariate_poly(a, x, y, env)?, &bivariate_poly(b, x, y, env)?, true),
        Term::Sub(a, b) => add(&bivariate_poly(a, x, y, env)?, &bivariate_poly(b, x, y, env)?, false),
        Term::Mul(a, b) => {
            let (p, q) = (bivariate_poly(a, x, y, env)?, bivariate_poly(b, x, y, env)?);
            let mut out = vec![UPoly::default(); p.len() + q.len() - 1];
            for (i, u) in p.iter().enumerate() {
                for (j, v) in q.iter().enumerate() {
                    out[i + j] = out[i + j].add(&u.mul(v));
                }
            }
            trim(out)
        }
        Term::Div(a, b) if !b.contains_var(x) && !b.contains_var(y) => {
            let d = eval_term(b, env).ok()?;
            let p = bivariate_poly(a, x, y, env)?;
            if d.is_zero() {
                vec![UPoly::default()]
            } else {
                p.iter().map(|c| c.scale(&d.recip())).collect()
            }
        }
        _ => return None,
    })
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    d
}

/// Sylvester resultant for the formal degrees `p.len() - 1` and `q.len() - 1`.
fn resultant(p: &[BigRational], q: &[BigRational]) -> BigRational {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let n = dp + dq;
    if n == 0 {
        return BigRational::one();
    }
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for r in 0..dq {
        for (i, c) in p.iter().rev().enumerate() {
            m[r][r + i] = c.clone();
        }
    }
    for r in 0..dp {
        for (i, c) in q.iter().rev().enumerate() {
            m[dq + r][r + i] = c.clone();
        }
    }
    det(m)
}

fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UPoly {
    let mut out = UPoly::default();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UPoly::new(vec![-xj.clone(), BigRational::one()])).scale(&(xi - xj).recip());
            }
        }
        out = out.add(&basis);
    }
    out
}

fn x_degree(p: &BPoly) -> usize {
    p.iter().filter(|c| !c.is_zero()).map(|c| c.degree()).max().unwrap_or(0)
}

fn derivative_y(p: &BPoly) -> BPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&int(i as i64))).collect()
}

/// `Res_y(p, q)` as a polynomial in `x`, by evaluation and interpolation.
fn resultant_in_x(p: &BPoly, q: &BPoly) -> UPoly {
    let bound = x_degree(p) * (q.len() - 1) + x_degree(q) * (p.len() - 1);
    let xs: Vec<BigRational> = (0..=bound as i64).map(int).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x0| {
            let pe: Vec<_> = p.iter().map(|c| c.eval(x0)).collect();
            let qe: Vec<_> = q.iter().map(|c| c.eval(x0)).collect();
            resultant(&pe, &qe)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// The root of `p` isolated by `iv` when it is rational. After clearing
/// denominators, a rational root `u/v` has `v` dividing the leading
/// coefficient `L`, so `L·root` is an integer.
fn rational_root(p: &UPoly, iv: &RootInterval) -> Option<BigRational> {
    let den = p.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let lead = (p.lead() * BigRational::from_integer(den)).abs();
    let iv = refine(p, iv, &(lead.recip() / int(2)));
    if iv.is_exact() {
        return Some(iv.lo);
    }
    let k = (&iv.lo * &lead).ceil();
    let q = k / &lead;
    (q < iv.hi && p.eval(&q).is_zero()).then_some(q)
}

/// Sample points meeting every cell of the projection of `polys` onto `x`,
/// and whether they are complete (all critical points rational, projection
/// well defined).
fn projection_samples(polys: &[BPoly]) -> (Vec<BigRational>, bool) {
    let mut exact = true;
    let mut proj: Vec<UPoly> = Vec::new();
    let mut ys: Vec<&BPoly> = Vec::new();
    for p in polys {
        proj.extend(p.iter().filter(|c| c.degree() >= 1).cloned());
        if p.len() >= 2 {
            ys.push(p);
        }
    }
    for p in &ys {
        if p.len() >= 3 {
            let d = resultant_in_x(p, &derivative_y(p));
            if d.is_zero() {
                exact = false;
            }
            proj.push(d);
        }
    }
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            if ys[i] == ys[j] {
                continue;
            }
            let r = resultant_in_x(ys[i], ys[j]);
            if r.is_zero() {
                exact = false;
            }
            proj.push(r);
        }
    }
    let eps = pow2(-40);
    let mut marks: Vec<(BigRational, BigRational)> = Vec::new();
    for p in proj.iter().filter(|p| !p.is_zero() && p.degree() >= 1) {
        let sq = p.squarefree();
        for iv in sq.isolate_roots() {
            if iv.is_exact() {
                marks.push((iv.lo.clone(), iv.hi));
            } else if let Some(q) = rational_root(&sq, &iv) {
                marks.push((q.clone(), q));
            } else {
                exact = false;
                let f = refine(&sq, &iv, &eps);
                marks.push((f.lo, f.hi));
            }
        }
    }
    marks.sort();
    let mut points = Vec::new();
    if marks.is_empty() {
        points.push(BigRational::zero());
        return (points, exact);
    }
    points.push(&marks[0].0 - BigRational::one());
    points.push(&marks[marks.len() - 1].1 + BigRational::one());
    for m in &marks {
        if m.0 == m.1 {
            points.push(m.0.clone());
        }
    }
    for w in marks.windows(2) {
        if w[0].1 < w[1].0 {
            points.push((&w[0].1 + &w[1].0) / int(2));
        }
    }
    points.sort();
    points.dedup();
    (points, exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_formula;

    fn decide(s: &str) -> Verdict {
        oracle_decide(&parse_formula(s).unwrap(), &Assignment::new(), &OracleConfig::default()).unwrap()
    }

    #[test]
    fn sturm_cases() {
        assert_eq!(decide("exists x. x*x = 2"), Verdict::exact(true));
        assert_eq!(decide("exists x. x*x < 0"), Verdict::exact(false));
        assert_eq!(decide("forall x. x*x + 1 > 0"), Verdict::exact(true));
    }

    #[test]
    fn power_cases() {
        assert_eq!(decide("exists x. A(x) and x*x = 2"), Verdict::exact(false));
        assert_eq!(decide("exists x. A(x) and 3 < x and x < 5"), Verdict::exact(true));
        assert_eq!(decide("exists x. D[3](x) and 9 < x and x < 63"), Verdict::exact(false));
        assert_eq!(decide("exists x. D[3](x) and 9 < x and x < 65"), Verdict::exact(true));
        assert_eq!(decide("exists x. A(x) and 1000000 < x"), Verdict::exact(true));
    }

    #[test]
    fn lambda_cases() {
        // λ vanishes on negative reals.
        assert_eq!(decide("forall x. L(x) <= x"), Verdict::exact(false));
        assert!(decide("forall x. x > 0 -> L(x) <= x").value);
        assert!(!decide("exists x. L(x) = 3").value);
        assert_eq!(decide("exists x. 0 < x and x < 2*L(x) and L(x) = 4 and 7 < x"), Verdict::exact(true));
        assert!(decide("exists x. 2*L(x) <= x").value);
    }

    #[test]
    fn two_variables() {
        assert_eq!(decide("exists x. exists y. x*x + y*y < 1 and x + y > 1"), Verdict::exact(true));
        assert_eq!(decide("exists x. exists y. x*x + y*y < 1 and x + y > 2"), Verdict::exact(false));
        assert_eq!(decide("forall x. exists y. y*y = x"), Verdict::exact(false));
        assert_eq!(decide("forall x. exists y. y = 2*x + 1"), Verdict::exact(true));
        assert_eq!(decide("exists x. exists y. y = x^2 and y = 3*x + 1"), Verdict::exact(true));
        assert_eq!(decide("exists x. exists y. x*y = 1 and x + y = 1"), Verdict::exact(false));
    }

    #[test]
    fn density_axiom() {
        let v = decide("forall x. x > 0 -> exists y. A(y) and y <= x and x < 2*y");
        assert!(v.value && !v.exact);
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_y(y - x, y + x) = 2x up to sign.
        let p: BPoly = vec![UPoly::new(vec![int(0), int(-1)]), UPoly::constant(int(1))];
        let q: BPoly = vec![UPoly::new(vec![int(0), int(1)]), UPoly::constant(int(1))];
        let r = resultant_in_x(&p, &q);
        assert_eq!(r.degree(), 1);
        assert!(r.eval(&int(0)).is_zero());
    }
}
