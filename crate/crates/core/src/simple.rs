//! Making a formula simple in a power-of-two variable `x`: `x` is squeezed out
//! of every `λ`, and every `D_n` atom on `x` becomes `D_n(2^r x)`, `0 <= r < n`.
//!
//! All statements here hold under the standing assumption `A(x)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::casesplit::CaseSplit;
use crate::division::eliminate_division;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::limits::Guard;
use crate::measure::lambda_depth_term;
use crate::normal::{is_simple_in, normalize_atoms};
use crate::polyx::PolyInX;
use crate::simplify::{simplify_term, simplify_with_powers};
use crate::term::{Name, Term};

/// `x = 2λ(u) ∨ … ∨ x = 2^n λ(u)`, valid when `0 < u < x <= 2^n u` and `A(x)`.
pub fn lambda_window(u: &Term, x: &Term, n: u32) -> Formula {
    Formula::disj(
        (1..=n as i64).map(|k| Formula::eq(x.clone(), Term::shifted(k, Term::lambda(u.clone())))).collect(),
    )
}

/// `D_n(x) ∨ D_n(2x) ∨ … ∨ D_n(2^{n-1} x)`, valid when `A(x)`.
pub fn dn_shift_cover(x: &Term, n: u32) -> Formula {
    Formula::disj((0..n as i64).map(|r| Formula::dn(n, Term::shifted(r, x.clone()))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Cases for `λ(p(x))` assuming `p(x) > 0`.
    Inequality,
    /// Pins of `x` assuming `p(x) = 0` with some coefficient nonzero.
    Equality,
}

/// One disjunct of the case analysis of `λ(p(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaCase {
    /// `λ(p(x)) = 2^r λ(a_i) x^i`.
    Monomial { r: i64, i: usize },
    /// `x^e = value` with `value` either `2^r λ(-a_j) / λ(a_i)` (when `i > j`)
    /// or `2^r λ(a_i) / λ(-a_j)` (when `i < j`), and `e = |i - j|`.
    Pin { e: usize, r: i64, i: usize, j: usize, value: Term },
}

impl LambdaCase {
    pub fn to_formula(&self, p: &PolyInX) -> Formula {
        let x = p.x();
        match self {
            LambdaCase::Monomial { r, i } => {
                let rhs = PolyInX::monomial(Term::shifted(*r, Term::lambda(p.coeffs[*i].clone())), &x, *i);
                Formula::eq(Term::lambda(p.to_term()), rhs)
            }
            LambdaCase::Pin { e, value, .. } => Formula::eq(Term::power(&x, *e as u32), value.clone()),
        }
    }
}

fn nonzero_indices(p: &PolyInX) -> Vec<usize> {
    (0..p.coeffs.len()).filter(|&i| !p.coeffs[i].is_zero()).collect()
}

pub fn pin_value(p: &PolyInX, r: i64, i: usize, j: usize) -> Term {
    let pos = Term::lambda(p.coeffs[i].clone());
    let neg = Term::lambda(Term::neg(p.coeffs[j].clone()));
    if i > j {
        Term::div(Term::shifted(r, neg), pos)
    } else {
        Term::div(Term::shifted(r, pos), neg)
    }
}

/// Exponent window for the pins. With `m + 1` nonzero summands, the ratio of
/// the largest summand to minus the least lies in `(1/m, 2m)`, which puts `r`
/// in `[-m, m]` in both directions and both modes.
fn pin_window(m: usize) -> core::ops::RangeInclusive<i64> {
    -(m as i64)..=(m as i64)
}

/// A disjunction of cases, one of which holds whenever `A(x)` and `p(x) > 0`
/// (inequality mode) or `A(x)`, `p(x) = 0` and some coefficient is nonzero
/// (equality mode, pins only).
pub fn lambda_poly_cases(p: &PolyInX, mode: Mode) -> Vec<LambdaCase> {
    let nz = nonzero_indices(p);
    let mut out = Vec::new();
    if nz.is_empty() {
        return out;
    }
    let m = nz.len() - 1;
    if mode == Mode::Inequality {
        if m == 0 {
            out.push(LambdaCase::Monomial { r: 0, i: nz[0] });
            return out;
        }
        for &i in &nz {
            for r in -1..=m as i64 {
                out.push(LambdaCase::Monomial { r, i });
            }
        }
    }
    let bound = p.degree() as i64 + 1;
    for &i in &nz {
        for &j in &nz {
            if i == j {
                continue;
            }
            for r in pin_window(m) {
                debug_assert!(-bound <= r && r <= bound);
                let value = pin_value(p, r, i, j);
                out.push(LambdaCase::Pin { e: i.abs_diff(j), r, i, j, value });
            }
        }
    }
    out
}

/// Upper bound on the number of values of `λ(p)` for degree `n`, from the
/// recurrence `f(n) < 10 (n+2)^3 f(n-1)`, `f(0) = 1`.
pub fn value_count_bound(n: usize) -> u128 {
    (1..=n).fold(1u128, |f, k| {
        let k = k as u128 + 2;
        f.saturating_mul(10 * k * k * k)
    })
}

fn monomial_candidates(p: &PolyInX, depth: usize, max_depth: usize, out: &mut BTreeSet<(Term, usize)>) -> Result<()> {
    if depth > max_depth {
        return Err(Error::Invariant("λ-case recursion deeper than the degree".into()));
    }
    for case in lambda_poly_cases(p, Mode::Inequality) {
        match case {
            LambdaCase::Monomial { r, i } => {
                let s = simplify_term(&Term::shifted(r, Term::lambda(p.coeffs[i].clone())));
                out.insert((s, i));
            }
            LambdaCase::Pin { e, value, .. } => {
                let reduced = p.reduce_power(e, &value).map_coeffs(&mut |c| simplify_term(c));
                if reduced.degree() >= e {
                    return Err(Error::Invariant("substituting a pin did not lower the degree".into()));
                }
                monomial_candidates(&reduced, depth + 1, max_depth, out)?;
            }
        }
    }
    Ok(())
}

/// Possible values `s x^i` of `λ(p(x))` for `A(x) ∧ p(x) > 0`, each guarded by
/// `A(s) ∧ s x^i <= p(x) < 2 s x^i`, which under `A(x)` says `λ(p(x)) = s x^i`.
pub fn lambda_poly_monomial(p: &PolyInX) -> Result<CaseSplit<(Term, usize)>> {
    let mut cands = BTreeSet::new();
    monomial_candidates(p, 0, p.degree(), &mut cands)?;
    if cands.len() as u128 > value_count_bound(p.degree()) {
        return Err(Error::Invariant("more λ values than the recurrence allows".into()));
    }
    let x = p.x();
    let pt = p.to_term();
    let cases = cands
        .into_iter()
        .map(|(s, i)| {
            let mono = PolyInX::monomial(s.clone(), &x, i);
            let guard = Formula::conj(vec![
                Formula::power(s.clone()),
                Formula::le(mono.clone(), pt.clone()),
                Formula::lt(pt.clone(), Term::mul(Term::int(2), mono)),
            ]);
            (guard, (s, i))
        })
        .collect();
    Ok(CaseSplit::new(cases))
}

fn innermost_lambdas(f: &Formula, x: &str) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    f.visit_atoms(&mut |a| {
        for t in a.terms().iter().flatten() {
            t.visit(&mut |s| {
                if let Term::Lambda(p) = s {
                    if p.contains_var(x) && lambda_depth_term(x, p) == 0 {
                        out.insert(s.clone());
                    }
                }
            });
        }
    });
    out
}

fn powers_of(x: &str) -> BTreeSet<Name> {
    [Name::from(x)].into_iter().collect()
}

/// Removes `x` from the scope of every `λ`, one innermost `λ(p)` at a time:
/// `φ ↦ (p <= 0 ∧ φ[λ(p) := 0]) ∨ ⋁_k (G_k ∧ φ[λ(p) := s_k x^{i_k}])`.
pub fn squeeze_lambda(f: &Formula, x: &str, guard: &Guard) -> Result<Formula> {
    if !f.is_quantifier_free() {
        return Err(Error::Contract("squeeze_lambda needs a quantifier-free formula".into()));
    }
    let powers = powers_of(x);
    let xt = Term::var(x);
    let mut f = f.clone();
    while let Some(lt) = innermost_lambdas(&f, x).into_iter().next() {
        let Term::Lambda(p) = &lt else { unreachable!() };
        let poly = PolyInX::from_term(p, x)?;
        let split = lambda_poly_monomial(&poly)?;
        let mut parts = vec![Formula::and(Formula::le((**p).clone(), Term::zero()), f.replace_term(&lt, &Term::zero()))];
        for (g, (s, i)) in &split.cases {
            let v = PolyInX::monomial(s.clone(), &xt, *i);
            parts.push(Formula::and(g.clone(), f.replace_term(&lt, &v)));
        }
        f = simplify_with_powers(&Formula::disj(parts), &powers);
        guard.check_size(&f)?;
    }
    Ok(f)
}

/// `D_n(p)` for `Λ(x, p) = 0`: `p > 0 ∧ ⋁_k (p = s_k x^{i_k} ∧ D_n(s_k x^{i_k}))`.
pub fn dn_poly_cases(p: &PolyInX, n: u32) -> Result<Formula> {
    let mut cands = BTreeSet::new();
    monomial_candidates(p, 0, p.degree(), &mut cands)?;
    let x = p.x();
    let pt = p.to_term();
    let alts = cands
        .into_iter()
        .map(|(s, i)| {
            let mono = PolyInX::monomial(s, &x, i);
            Formula::and(Formula::eq(pt.clone(), mono.clone()), Formula::dn(n, mono))
        })
        .collect();
    Ok(Formula::and(Formula::lt(Term::zero(), pt), Formula::disj(alts)))
}

/// `D_n(s x^i) ⟺ ⋁_{r<n} (D_n(2^r x) ∧ D_n(2^w s))` with `w = -r·i mod n`.
pub fn dn_monomial_split(s: &Term, i: usize, n: u32, x: &str) -> Formula {
    if i == 0 {
        return Formula::dn(n, s.clone());
    }
    let xt = Term::var(x);
    let n64 = n as i64;
    Formula::disj(
        (0..n64)
            .map(|r| {
                let w = (-r * i as i64).rem_euclid(n64);
                Formula::and(Formula::dn(n, Term::shifted(r, xt.clone())), Formula::dn(n, Term::shifted(w, s.clone())))
            })
            .collect(),
    )
}

fn as_monomial(p: &PolyInX) -> Option<(Term, usize)> {
    let nz = nonzero_indices(p);
    match nz.as_slice() {
        [i] => Some((p.coeffs[*i].clone(), *i)),
        [] => Some((Term::zero(), 0)),
        _ => None,
    }
}

fn split_dn_atoms(f: &Formula, x: &str) -> Result<Formula> {
    let mut err = None;
    let out = f.map_atoms(&mut |a| match a {
        Atom::Dn { n, arg } if arg.contains_var(x) => match PolyInX::from_term(arg, x) {
            Ok(p) => match as_monomial(&p) {
                Some((s, i)) => dn_monomial_split(&s, i, *n, x),
                None => match dn_poly_cases(&p, *n) {
                    Ok(g) => g.map_atoms(&mut |b| match b {
                        Atom::Dn { n, arg } if arg.contains_var(x) => {
                            let q = PolyInX::from_term(arg, x).expect("monomial argument");
                            let (s, i) = as_monomial(&q).expect("monomial argument");
                            dn_monomial_split(&s, i, *n, x)
                        }
                        b => Formula::Atom(b.clone()),
                    }),
                    Err(e) => {
                        err = Some(e);
                        Formula::False
                    }
                },
            },
            Err(e) => {
                err = Some(e);
                Formula::False
            }
        },
        a => Formula::Atom(a.clone()),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// A formula simple in `x`, equivalent to `f` whenever `A(x)`.
pub fn make_simple(f: &Formula, x: &str, guard: &Guard) -> Result<Formula> {
    if !f.is_quantifier_free() {
        return Err(Error::Contract("make_simple needs a quantifier-free formula".into()));
    }
    let powers = powers_of(x);
    let f = eliminate_division(f, guard)?;
    let f = simplify_with_powers(&f, &powers);
    let f = squeeze_lambda(&f, x, guard)?;
    let f = split_dn_atoms(&f, x)?;
    guard.check_size(&f)?;
    let f = eliminate_division(&f, guard)?;
    let f = simplify_with_powers(&f, &powers);
    let f = normalize_atoms(&f, x)?;
    if !is_simple_in(&f, x) {
        return Err(Error::Invariant("make_simple produced a formula that is not simple".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, eval_term, Assignment};
    use crate::measure::lambda_depth;
    use crate::rational::{int, pow2, ratio};
    use num_rational::BigRational;

    fn x() -> Term {
        Term::var("x")
    }

    fn at_power(t: i64, extra: &[(&str, BigRational)]) -> Assignment {
        let mut env: Assignment = extra.iter().map(|(k, v)| (Name::from(*k), v.clone())).collect();
        env.insert(Name::from("x"), pow2(t));
        env
    }

    fn poly(t: &Term) -> PolyInX {
        PolyInX::from_term(t, "x").unwrap()
    }

    fn equivalent_on_powers(f: &Formula, g: &Formula, params: &[&str]) {
        let vals = [int(-3), ratio(-1, 2), int(0), ratio(1, 3), int(1), int(2), ratio(5, 2), int(7)];
        for t in -10..=10 {
            let mut envs = vec![at_power(t, &[])];
            for p in params {
                envs = envs
                    .into_iter()
                    .flat_map(|e| {
                        vals.iter().map(move |v| {
                            let mut e = e.clone();
                            e.insert(Name::from(*p), v.clone());
                            e
                        })
                    })
                    .collect();
            }
            for env in envs {
                assert_eq!(eval_qf(f, &env).unwrap(), eval_qf(g, &env).unwrap(), "{f} vs {g} at {env:?}");
            }
        }
    }

    #[test]
    fn window_examples() {
        let f = lambda_window(&Term::int(3), &x(), 2);
        let hits: Vec<i64> = (-5..10).filter(|&t| eval_qf(&f, &at_power(t, &[])).unwrap()).collect();
        assert_eq!(hits, vec![2, 3]);
        for t in -6..6 {
            assert!(eval_qf(&dn_shift_cover(&x(), 3), &at_power(t, &[])).unwrap());
        }
    }

    #[test]
    fn lambda_cases_cover() {
        let y = Term::var("y");
        for p in [x() + Term::int(1), x() * x() - Term::int(3) * x() + Term::int(1), y.clone() * x() - Term::int(2)] {
            let pp = poly(&p);
            let cases = lambda_poly_cases(&pp, Mode::Inequality);
            for t in -8..=8 {
                for yv in [int(-2), ratio(1, 3), int(5)] {
                    let env = at_power(t, &[("y", yv.clone())]);
                    if eval_term(&p, &env).unwrap() > int(0) {
                        assert!(cases.iter().any(|c| eval_qf(&c.to_formula(&pp), &env).unwrap()), "{p} at {env:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn equality_pins_cover() {
        let p = x() * x() - Term::int(4);
        let pp = poly(&p);
        let cases = lambda_poly_cases(&pp, Mode::Equality);
        assert!(cases.iter().all(|c| matches!(c, LambdaCase::Pin { .. })));
        let env = at_power(1, &[]);
        assert!(cases.iter().any(|c| eval_qf(&c.to_formula(&pp), &env).unwrap()));
    }

    #[test]
    fn monomial_values_are_exact() {
        for p in [x() + Term::int(1), x() * x(), x() * x() - x() + Term::rat(1, 3)] {
            let split = lambda_poly_monomial(&poly(&p)).unwrap();
            for t in -8..=8 {
                let env = at_power(t, &[]);
                let pv = eval_term(&p, &env).unwrap();
                if pv <= int(0) {
                    continue;
                }
                let want = crate::rational::lambda(&pv);
                let mut hit = false;
                for (g, (s, i)) in &split.cases {
                    if eval_qf(g, &env).unwrap() {
                        hit = true;
                        let got = eval_term(&PolyInX::monomial(s.clone(), &x(), *i), &env).unwrap();
                        assert_eq!(got, want);
                    }
                }
                assert!(hit, "{p} at 2^{t}");
            }
        }
    }

    #[test]
    fn squeeze_removes_lambda() {
        let f = Formula::lt(x(), Term::lambda(x() + Term::int(1)));
        let g = squeeze_lambda(&f, "x", &Guard::default()).unwrap();
        assert_eq!(lambda_depth("x", &g), 0);
        equivalent_on_powers(&f, &g, &[]);
        let f = Formula::eq(Term::lambda(Term::lambda(x()) + Term::int(1)), Term::int(2) * x());
        let g = squeeze_lambda(&f, "x", &Guard::default()).unwrap();
        assert_eq!(lambda_depth("x", &g), 0);
        equivalent_on_powers(&f, &g, &[]);
    }

    #[test]
    fn dn_splits() {
        let f = Formula::dn(2, Term::int(2) * x());
        let g = dn_monomial_split(&Term::int(2), 1, 2, "x");
        equivalent_on_powers(&f, &g, &[]);
        let f = Formula::dn(3, x() * x());
        let g = dn_monomial_split(&Term::one(), 2, 3, "x");
        equivalent_on_powers(&f, &g, &[]);
        let f = Formula::dn(2, x() + Term::int(1));
        let g = dn_poly_cases(&poly(&(x() + Term::int(1))), 2).unwrap();
        equivalent_on_powers(&f, &g, &[]);
    }

    #[test]
    fn make_simple_examples() {
        let y = Term::var("y");
        let cases = [
            Formula::dn(2, Term::int(4) * x()),
            Formula::lt(Term::int(2), x() * x()),
            Formula::and(Formula::eq(Term::lambda(x()) * x(), x() * x()), Formula::dn(3, Term::int(2) * x() * x() * x())),
            Formula::lt(y.clone(), Term::lambda(x() + y.clone())),
            Formula::dn(2, Term::lambda(y.clone() / x())),
        ];
        for f in cases {
            let g = make_simple(&f, "x", &Guard::default()).unwrap();
            assert!(is_simple_in(&g, "x"), "{g}");
            equivalent_on_powers(&f, &g, &["y"]);
        }
    }
}
