//! Removal of the defined division symbol (`x / 0 = 0`).
//!
//! Division is first pulled out of every `λ` scope, innermost occurrences
//! first, using `λ(x/y) ∈ {λ(x)/(2λ(y)), λ(x)/λ(y)}` for positive `x`, `y`.
//! The remaining quotients are brought to a single fraction per atom and the
//! atom is cleared by multiplying through under sign cases.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::casesplit::CaseSplit;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::limits::Guard;
use crate::measure::div_lambda_depth;
use crate::term::Term;

/// A quotient `num / den` of division-free terms.
pub type Quotient = (Term, Term);

fn gt0(t: &Term) -> Formula {
    Formula::lt(Term::zero(), t.clone())
}

fn lt0(t: &Term) -> Formula {
    Formula::lt(t.clone(), Term::zero())
}

fn eq0(t: &Term) -> Formula {
    Formula::eq(t.clone(), Term::zero())
}

/// Literal terms that are certainly nonzero.
fn nonzero_literal(t: &Term) -> bool {
    match t {
        Term::Const(c) => !num_traits::Zero::is_zero(c),
        Term::Pow2(_) => true,
        Term::Mul(a, b) => nonzero_literal(a) && nonzero_literal(b),
        _ => false,
    }
}

fn positive_literal(t: &Term) -> bool {
    match t {
        Term::Const(c) => num_traits::Signed::is_positive(c),
        Term::Pow2(_) => true,
        Term::Mul(a, b) => positive_literal(a) && positive_literal(b),
        _ => false,
    }
}

/// `λ(x/y)` for `0 < x`, `0 < y`.
pub fn rewrite_lambda_quotient(x: &Term, y: &Term) -> CaseSplit<Term> {
    let (lx, ly) = (Term::lambda(x.clone()), Term::lambda(y.clone()));
    let small = Formula::lt(Term::mul(x.clone(), ly.clone()), Term::mul(y.clone(), lx.clone()));
    CaseSplit::new(vec![
        (small.clone(), Term::div(lx.clone(), Term::mul(Term::int(2), ly.clone()))),
        (Formula::not(small), Term::div(lx, ly)),
    ])
}

/// `λ(r/s)` as a quotient, for division-free `r`, `s` of any sign.
fn lambda_of_quotient(r: &Term, s: &Term) -> CaseSplit<Quotient> {
    let pos = Formula::and(gt0(r), gt0(s));
    let neg = Formula::and(lt0(r), lt0(s));
    let mut cases = Vec::new();
    let split = |x: &Term, y: &Term, sign: &Formula, cases: &mut Vec<(Formula, Quotient)>| {
        for (g, v) in rewrite_lambda_quotient(x, y).cases {
            if let Term::Div(n, d) = v {
                cases.push((Formula::and(sign.clone(), g), ((*n).clone(), (*d).clone())));
            }
        }
    };
    split(r, s, &pos, &mut cases);
    split(&Term::neg(r.clone()), &Term::neg(s.clone()), &neg, &mut cases);
    let other = Formula::and(Formula::not(pos), Formula::not(neg));
    cases.push((other, (Term::zero(), Term::one())));
    CaseSplit::new(cases)
}

/// Writes `t` as a single quotient of division-free terms, case by case.
pub fn quotient_normal_form(t: &Term) -> CaseSplit<Quotient> {
    if !t.has_division() {
        return CaseSplit::single((t.clone(), Term::one()));
    }
    match t {
        Term::Add(a, b) | Term::Sub(a, b) => {
            let add = matches!(t, Term::Add(..));
            let op = move |x: Term, y: Term| if add { Term::plus(x, y) } else { Term::minus(x, y) };
            let (qa, qb) = (quotient_normal_form(a), quotient_normal_form(b));
            qa.zip(&qb).bind(|((r1, s1), (r2, s2))| {
                if s1 == s2 {
                    return CaseSplit::single((op(r1.clone(), r2.clone()), s1.clone()));
                }
                let cross = (
                    op(Term::times(r1.clone(), s2.clone()), Term::times(r2.clone(), s1.clone())),
                    Term::times(s1.clone(), s2.clone()),
                );
                let mut cases = Vec::new();
                let mut both = Vec::new();
                if !nonzero_literal(s1) {
                    cases.push((eq0(s1), (op(Term::zero(), r2.clone()), s2.clone())));
                    both.push(Formula::not(eq0(s1)));
                }
                if !nonzero_literal(s2) {
                    cases.push((Formula::and2(eq0(s2), Formula::conj(both.clone())), (r1.clone(), s1.clone())));
                    both.push(Formula::not(eq0(s2)));
                }
                cases.push((Formula::conj(both), cross));
                CaseSplit::new(cases)
            })
        }
        Term::Mul(a, b) => quotient_normal_form(a)
            .zip(&quotient_normal_form(b))
            .map(|((r1, s1), (r2, s2))| (Term::times(r1.clone(), r2.clone()), Term::times(s1.clone(), s2.clone()))),
        Term::Div(a, b) => quotient_normal_form(a)
            .zip(&quotient_normal_form(b))
            .map(|((r1, s1), (r2, s2))| (Term::times(r1.clone(), s2.clone()), Term::times(s1.clone(), r2.clone()))),
        Term::Lambda(u) => quotient_normal_form(u).bind(|(r, s)| {
            if s.is_one() {
                CaseSplit::single((Term::lambda(r.clone()), Term::one()))
            } else {
                lambda_of_quotient(r, s)
            }
        }),
        Term::Var(_) | Term::Const(_) | Term::Pow2(_) => unreachable!("division-free leaf"),
    }
}

fn quotient_term((n, d): &Quotient) -> Term {
    if d.is_one() {
        n.clone()
    } else {
        Term::div(n.clone(), d.clone())
    }
}

/// Innermost `λ` terms whose argument contains division.
fn innermost_division_lambdas(f: &Formula) -> BTreeSet<Term> {
    fn walk(t: &Term, out: &mut BTreeSet<Term>) -> bool {
        // Returns whether t contains a λ whose scope holds a division.
        match t {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => false,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                let l = walk(a, out);
                let r = walk(b, out);
                l || r
            }
            Term::Lambda(s) => {
                if walk(s, out) {
                    true
                } else if s.has_division() {
                    out.insert(t.clone());
                    true
                } else {
                    false
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    f.visit_atoms(&mut |a| {
        for t in a.terms().iter().flatten() {
            walk(t, &mut out);
        }
    });
    out
}

/// Removes division from every `λ` scope. Each round rewrites all innermost
/// division-carrying `λ` terms, so the maximal depth drops by one per round.
pub fn clear_lambda_division(f: &Formula, guard: &Guard) -> Result<Formula> {
    if !f.is_quantifier_free() {
        return Err(Error::Contract("clear_lambda_division needs a quantifier-free formula".into()));
    }
    let mut f = f.clone();
    let mut depth = div_lambda_depth(&f);
    while depth > 0 {
        for lt in innermost_division_lambdas(&f) {
            let split = quotient_normal_form(&lt);
            f = split.to_formula(|q| f.replace_term(&lt, &quotient_term(q)));
            guard.check_size(&f)?;
        }
        let next = div_lambda_depth(&f);
        if next >= depth {
            return Err(Error::Invariant("division depth under λ did not decrease".into()));
        }
        depth = next;
    }
    Ok(f)
}

/// `D_n(x/y)` for powers of two `x`, `y`.
pub fn dn_of_quotient(n: u32, x: &Term, y: &Term) -> Formula {
    Formula::disj(
        (0..n as i64)
            .map(|i| {
                Formula::and(Formula::dn(n, Term::shifted(i, x.clone())), Formula::dn(n, Term::shifted(i, y.clone())))
            })
            .collect(),
    )
}

/// `D_n(r/s)` for positive division-free `r`, `s`: the quotient equals its
/// own `λ` and that power of two satisfies `D_n`.
fn dn_of_positive_quotient(n: u32, r: &Term, s: &Term) -> Formula {
    rewrite_lambda_quotient(r, s).to_formula(|v| match v {
        Term::Div(ln, ld) => {
            // r/s = ln/ld with s, ld > 0 becomes r·ld = s·ln.
            let same = Formula::eq(Term::mul(r.clone(), (**ld).clone()), Term::mul(s.clone(), (**ln).clone()));
            Formula::and(same, dn_of_quotient(n, ln, ld))
        }
        _ => unreachable!("quotient case"),
    })
}

fn clear_atom(a: &Atom) -> Formula {
    match a {
        Atom::Eq(l, r) => quotient_normal_form(&Term::sub(l.clone(), r.clone())).to_formula(|(p, q)| {
            if nonzero_literal(q) {
                eq0(p)
            } else {
                Formula::or(eq0(q), eq0(p))
            }
        }),
        Atom::Lt(l, r) => quotient_normal_form(&Term::sub(r.clone(), l.clone())).to_formula(|(p, q)| {
            if positive_literal(q) {
                gt0(p)
            } else {
                Formula::or(Formula::and(gt0(q), gt0(p)), Formula::and(lt0(q), lt0(p)))
            }
        }),
        Atom::Dn { n, arg } => quotient_normal_form(arg).to_formula(|(r, s)| {
            if s.is_one() {
                return Formula::dn(*n, r.clone());
            }
            let pos = Formula::conj(vec![gt0(r), gt0(s), dn_of_positive_quotient(*n, r, s)]);
            let (nr, ns) = (Term::neg(r.clone()), Term::neg(s.clone()));
            let neg = Formula::conj(vec![lt0(r), lt0(s), dn_of_positive_quotient(*n, &nr, &ns)]);
            Formula::or(pos, neg)
        }),
    }
}

/// An equivalent quantifier-free formula without division.
pub fn eliminate_division(f: &Formula, guard: &Guard) -> Result<Formula> {
    if f.is_division_free() {
        return Ok(f.clone());
    }
    let g = clear_lambda_division(f, guard)?;
    let out = g.map_atoms(&mut |a| if a.has_division() { clear_atom(a) } else { Formula::Atom(a.clone()) });
    guard.check_size(&out)?;
    if !out.is_division_free() {
        return Err(Error::Invariant("division survived elimination".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, eval_term, Assignment};
    use crate::rational::{int, pow2, ratio};
    use crate::term::Name;
    use num_rational::BigRational;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    fn grid() -> Vec<BigRational> {
        let mut out = vec![int(0)];
        for n in [1, 2, 3, 5, 7] {
            for d in [1, 2, 3, 4] {
                out.push(ratio(n, d));
                out.push(ratio(-n, d));
            }
        }
        out
    }

    fn assignments(names: &[&str]) -> Vec<Assignment> {
        let g = grid();
        let mut out = vec![Assignment::new()];
        for n in names {
            let mut next = Vec::new();
            for a in &out {
                for q in &g {
                    let mut b = a.clone();
                    b.insert(Name::from(*n), q.clone());
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    fn check_split(t: &Term, names: &[&str]) {
        let split = quotient_normal_form(t);
        for env in assignments(names) {
            let want = eval_term(t, &env).unwrap();
            let mut hit = false;
            for (g, q) in &split.cases {
                if eval_qf(g, &env).unwrap() {
                    hit = true;
                    assert!(!q.0.has_division() && !q.1.has_division());
                    assert_eq!(eval_term(&quotient_term(q), &env).unwrap(), want, "{t} at {env:?}");
                }
            }
            assert!(hit, "no guard holds for {t} at {env:?}");
        }
    }

    #[test]
    fn lambda_quotient_examples() {
        for (x, y) in [(5, 3), (6, 3), (1, 1)] {
            let env = Assignment::new();
            let split = rewrite_lambda_quotient(&Term::int(x), &Term::int(y));
            let want = crate::rational::lambda(&ratio(x, y));
            let live: Vec<_> = split.cases.iter().filter(|(g, _)| eval_qf(g, &env).unwrap()).collect();
            assert_eq!(live.len(), 1);
            assert_eq!(eval_term(&live[0].1, &env).unwrap(), want);
        }
    }

    #[test]
    fn quotient_normal_form_is_exhaustive_and_exact() {
        check_split(&(v("a") / v("b") + v("c") / v("b")), &["a", "b", "c"]);
        check_split(&(v("a") / v("b") + Term::one() / v("d")), &["a", "b", "d"]);
        check_split(&(v("a") - v("a") / v("b")), &["a", "b"]);
        check_split(&Term::lambda(v("a") / v("b")), &["a", "b"]);
        check_split(&(Term::lambda(Term::lambda(v("a") / v("b")) + Term::one()) * v("a")), &["a", "b"]);
        check_split(&((v("a") / (v("b") - Term::int(1))) / (v("a") + v("b"))), &["a", "b"]);
    }

    #[test]
    fn dn_of_quotient_examples() {
        let env = Assignment::new();
        for (x, y) in [(8, 2), (16, 4), (2, 2), (2, 8), (32, 1)] {
            let lhs = crate::rational::dn_holds(2, &ratio(x, y));
            let rhs = eval_qf(&dn_of_quotient(2, &Term::int(x), &Term::int(y)), &env).unwrap();
            assert_eq!(lhs, rhs, "x={x} y={y}");
        }
    }

    fn check_elim(f: &Formula, names: &[&str]) {
        let g = eliminate_division(f, &Guard::default()).unwrap();
        assert!(g.is_division_free());
        for env in assignments(names) {
            assert_eq!(eval_qf(f, &env).unwrap(), eval_qf(&g, &env).unwrap(), "{f} at {env:?}");
        }
    }

    #[test]
    fn eliminate_division_is_equivalent() {
        let (x, y) = (v("x"), v("y"));
        check_elim(&Formula::lt(Term::one(), x.clone() / y.clone()), &["x", "y"]);
        check_elim(&Formula::eq(Term::lambda(x.clone() / y.clone()), Term::one()), &["x", "y"]);
        check_elim(&Formula::dn(2, x.clone() / y.clone()), &["x", "y"]);
        check_elim(&Formula::dn(3, Term::lambda(Term::lambda(x.clone() / y.clone()) + x.clone())), &["x", "y"]);
        let plain = Formula::lt(Term::zero(), x.clone());
        assert_eq!(eliminate_division(&plain, &Guard::default()).unwrap(), plain);
    }

    #[test]
    fn dn_quotient_of_powers() {
        let f = Formula::dn(4, Term::lambda(Term::int(100)) / Term::lambda(Term::int(3)));
        let g = eliminate_division(&f, &Guard::default()).unwrap();
        assert!(!eval_qf(&g, &Assignment::new()).unwrap());
        let f = Formula::dn(2, Term::constant(pow2(3)) / v("y"));
        check_elim(&f, &["y"]);
    }

    #[test]
    fn clearing_rounds_reduce_depth() {
        let t = Term::lambda(Term::lambda(v("x") / v("y")));
        let f = Formula::eq(t, Term::one());
        let g = clear_lambda_division(&f, &Guard::default()).unwrap();
        assert_eq!(div_lambda_depth(&g), 0);
    }
}
