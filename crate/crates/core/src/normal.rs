//! Normal forms: negation normal form, disjunctive normal form, prenex form,
//! atom normalization relative to a variable, and the "simple in x" check.

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{fresh_name, Atom, Formula, Literal};
use crate::measure::lambda_depth_term;
use crate::polyx::PolyInX;
use crate::term::{Name, Term};

/// Pushes negations down to atoms; quantifiers are dualized.
pub fn nnf(f: &Formula) -> Formula {
    nnf_pol(f, true)
}

fn nnf_pol(f: &Formula, pos: bool) -> Formula {
    match f {
        Formula::True | Formula::False => {
            if pos == (*f == Formula::True) {
                Formula::True
            } else {
                Formula::False
            }
        }
        Formula::Atom(_) => {
            if pos {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }
        Formula::Not(a) => nnf_pol(a, !pos),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (l, r) = (nnf_pol(a, pos), nnf_pol(b, pos));
            if matches!(f, Formula::And(..)) == pos {
                Formula::and(l, r)
            } else {
                Formula::or(l, r)
            }
        }
        Formula::Exists(x, a) | Formula::Forall(x, a) => {
            let body = Rc::new(nnf_pol(a, pos));
            if matches!(f, Formula::Exists(..)) == pos {
                Formula::Exists(x.clone(), body)
            } else {
                Formula::Forall(x.clone(), body)
            }
        }
    }
}

pub type Clause = Vec<Literal>;

/// Disjunctive normal form of a quantifier-free formula as a list of clauses.
/// Clauses are sorted and deduplicated; contradictory clauses are dropped.
/// `cap` bounds the total number of literal occurrences.
pub fn dnf_clauses(f: &Formula, cap: usize) -> Result<Vec<Clause>> {
    if !f.is_quantifier_free() {
        return Err(Error::Contract("DNF needs a quantifier-free formula".into()));
    }
    let clauses = dnf_rec(f, true, cap)?;
    Ok(clean(clauses))
}

fn dnf_rec(f: &Formula, pos: bool, cap: usize) -> Result<Vec<Clause>> {
    Ok(match f {
        Formula::True | Formula::False => {
            if pos == (*f == Formula::True) {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        }
        Formula::Atom(a) => vec![vec![Literal { positive: pos, atom: a.clone() }]],
        Formula::Not(a) => dnf_rec(a, !pos, cap)?,
        Formula::And(..) | Formula::Or(..) => {
            let conj = matches!(f, Formula::And(..)) == pos;
            let parts: Vec<&Formula> = if matches!(f, Formula::And(..)) { f.conjuncts() } else { f.disjuncts() };
            if conj {
                let mut acc: Vec<Clause> = vec![Vec::new()];
                for p in parts {
                    let d = dnf_rec(p, pos, cap)?;
                    let mut next = Vec::with_capacity(acc.len() * d.len());
                    let mut total = 0usize;
                    for a in &acc {
                        for b in &d {
                            let mut c = a.clone();
                            c.extend(b.iter().cloned());
                            c.sort();
                            c.dedup();
                            if contradictory(&c) {
                                continue;
                            }
                            total += c.len().max(1);
                            if total > cap {
                                return Err(Error::Blowup { size: total, limit: cap });
                            }
                            next.push(c);
                        }
                    }
                    acc = dedup_clauses(next);
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            } else {
                let mut acc = Vec::new();
                let mut total = 0usize;
                for p in parts {
                    for c in dnf_rec(p, pos, cap)? {
                        total += c.len().max(1);
                        if total > cap {
                            return Err(Error::Blowup { size: total, limit: cap });
                        }
                        acc.push(c);
                    }
                }
                acc
            }
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    })
}

fn contradictory(c: &Clause) -> bool {
    c.windows(2).any(|w| w[0].atom == w[1].atom && w[0].positive != w[1].positive)
}

fn dedup_clauses(mut cs: Vec<Clause>) -> Vec<Clause> {
    cs.sort();
    cs.dedup();
    cs
}

fn clean(cs: Vec<Clause>) -> Vec<Clause> {
    let mut cs: Vec<Clause> = cs.into_iter().filter(|c| !contradictory(c)).collect();
    cs = dedup_clauses(cs);
    if cs.iter().any(|c| c.is_empty()) {
        return vec![Vec::new()];
    }
    // Subsumption: a clause containing another clause is redundant.
    if cs.len() <= 512 {
        cs.sort_by_key(|c| c.len());
        let mut kept: Vec<Clause> = Vec::new();
        for c in cs {
            let subsumed = kept.iter().any(|k| k.iter().all(|l| c.binary_search(l).is_ok()));
            if !subsumed {
                kept.push(c);
            }
        }
        kept.sort();
        return kept;
    }
    cs
}

pub fn clause_formula(c: &Clause) -> Formula {
    Formula::conj(c.iter().map(|l| l.to_formula()).collect())
}

pub fn clauses_formula(cs: &[Clause]) -> Formula {
    Formula::disj(cs.iter().map(clause_formula).collect())
}

/// Disjunctive normal form as a formula.
pub fn to_dnf(f: &Formula, cap: usize) -> Result<Formula> {
    Ok(clauses_formula(&dnf_clauses(f, cap)?))
}

/// Normalizes every arithmetic atom relative to `x` to `p = 0` or `0 < q`,
/// removing negations in front of them; `D_n` literals stay as they are.
///
/// Requires a quantifier-free, division-free formula in which `x` does not occur
/// under `λ`, and in which every `D_n` argument containing `x` is a monomial in `x`.
pub fn normalize_atoms(f: &Formula, x: &str) -> Result<Formula> {
    if !f.is_quantifier_free() {
        return Err(Error::Contract("normalize_atoms needs a quantifier-free formula".into()));
    }
    if !f.is_division_free() {
        return Err(Error::Contract("normalize_atoms needs a division-free formula".into()));
    }
    let g = nnf(f);
    norm_rec(&g, x)
}

fn check_term(t: &Term, x: &str) -> Result<()> {
    if lambda_depth_term(x, t) > 0 {
        return Err(Error::Contract("variable occurs under λ".into()));
    }
    Ok(())
}

fn norm_rec(f: &Formula, x: &str) -> Result<Formula> {
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::And(a, b) => Formula::and(norm_rec(a, x)?, norm_rec(b, x)?),
        Formula::Or(a, b) => Formula::or(norm_rec(a, x)?, norm_rec(b, x)?),
        Formula::Atom(a) => norm_literal(a, true, x)?,
        Formula::Not(a) => match &**a {
            Formula::Atom(at) => norm_literal(at, false, x)?,
            _ => unreachable!("negation normal form"),
        },
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    })
}

fn norm_literal(a: &Atom, pos: bool, x: &str) -> Result<Formula> {
    let zero = Term::zero;
    Ok(match a {
        Atom::Eq(l, r) => {
            check_term(l, x)?;
            check_term(r, x)?;
            let d = Term::sub(l.clone(), r.clone());
            let d_neg = Term::sub(r.clone(), l.clone());
            if pos {
                Formula::eq(d, zero())
            } else {
                Formula::or(Formula::lt(zero(), d), Formula::lt(zero(), d_neg))
            }
        }
        Atom::Lt(l, r) => {
            check_term(l, x)?;
            check_term(r, x)?;
            let d = Term::sub(r.clone(), l.clone());
            let d_neg = Term::sub(l.clone(), r.clone());
            if pos {
                Formula::lt(zero(), d)
            } else {
                Formula::or(Formula::lt(zero(), d_neg.clone()), Formula::eq(d_neg, zero()))
            }
        }
        Atom::Dn { arg, .. } => {
            check_term(arg, x)?;
            if arg.contains_var(x) && !is_monomial_in(arg, x) {
                return Err(Error::Contract("a D_n argument is not a monomial in the variable".into()));
            }
            Literal { positive: pos, atom: a.clone() }.to_formula()
        }
    })
}

/// Whether `t` is `s · x^i` for an `x`-free `s`.
pub fn is_monomial_in(t: &Term, x: &str) -> bool {
    match PolyInX::from_term(t, x) {
        Ok(p) => p.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1,
        Err(_) => false,
    }
}

/// Whether `D_n(t)` has the simple shape `D_n(x)` or `D_n(2^r · x)` with `0 <= r < n`.
fn is_simple_dn(n: u32, t: &Term, x: &str) -> bool {
    match t {
        Term::Var(v) => &**v == x,
        Term::Mul(a, b) => match (&**a, &**b) {
            (Term::Pow2(r), Term::Var(v)) => &**v == x && *r >= 0 && (*r as u64) < n as u64,
            _ => false,
        },
        _ => false,
    }
}

/// Whether `f` is simple in `x`: no `λ` around `x`, every arithmetic atom is
/// `p(x) = 0` or `0 < q(x)` with `p`, `q` polynomial in `x`, and every `D_n`
/// atom mentioning `x` is `D_n(2^r x)` with `0 <= r < n`.
pub fn is_simple_in(f: &Formula, x: &str) -> bool {
    if !f.is_quantifier_free() {
        return false;
    }
    let mut ok = true;
    f.visit_atoms(&mut |a| {
        if !ok {
            return;
        }
        ok = match a {
            Atom::Eq(p, z) => z.is_zero() && (!p.contains_var(x) || PolyInX::is_polynomial(p, x)),
            Atom::Lt(z, q) => z.is_zero() && (!q.contains_var(x) || PolyInX::is_polynomial(q, x)),
            Atom::Dn { n, arg } => !arg.contains_var(x) || is_simple_dn(*n, arg, x),
        };
        if ok {
            ok = a.terms().iter().flatten().all(|t| lambda_depth_term(x, t) == 0);
        }
    });
    ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Prenex form: a quantifier prefix (outermost first) and a quantifier-free
/// matrix. Bound variables are renamed apart from each other and from free ones.
pub fn prenex(f: &Formula) -> (Vec<(Quantifier, Name)>, Formula) {
    let mut avoid = f.all_names();
    let g = nnf(f);
    let mut prefix = Vec::new();
    let m = pull(&g, &mut prefix, &mut avoid);
    (prefix, m)
}

fn pull(f: &Formula, prefix: &mut Vec<(Quantifier, Name)>, avoid: &mut BTreeSet<Name>) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) | Formula::Not(_) => f.clone(),
        Formula::And(a, b) => {
            let l = pull(a, prefix, avoid);
            let r = pull(b, prefix, avoid);
            Formula::and(l, r)
        }
        Formula::Or(a, b) => {
            let l = pull(a, prefix, avoid);
            let r = pull(b, prefix, avoid);
            Formula::or(l, r)
        }
        Formula::Exists(x, a) | Formula::Forall(x, a) => {
            let q = if matches!(f, Formula::Exists(..)) { Quantifier::Exists } else { Quantifier::Forall };
            let fresh = if prefix.iter().any(|(_, y)| y == x) || is_free_elsewhere(x, avoid) {
                let y = fresh_name(x, avoid);
                avoid.insert(y.clone());
                y
            } else {
                x.clone()
            };
            let body = if fresh != *x { a.substitute(x, &Term::Var(fresh.clone())) } else { (**a).clone() };
            prefix.push((q, fresh));
            pull(&body, prefix, avoid)
        }
    }
}

// Renaming every bound variable that clashes with a previously pulled binder is
// enough because `avoid` starts with all names of the input.
fn is_free_elsewhere(_x: &Name, _avoid: &BTreeSet<Name>) -> bool {
    false
}

/// Rebuilds a formula from a prefix and a matrix.
pub fn from_prenex(prefix: &[(Quantifier, Name)], matrix: Formula) -> Formula {
    prefix.iter().rev().fold(matrix, |acc, (q, x)| match q {
        Quantifier::Exists => Formula::Exists(x.clone(), Rc::new(acc)),
        Quantifier::Forall => Formula::Forall(x.clone(), Rc::new(acc)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, Assignment};
    use crate::rational::int;
    use alloc::string::ToString;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn de_morgan_dnf() {
        let a = Formula::lt(x(), Term::int(1));
        let b = Formula::lt(Term::int(2), x());
        let f = Formula::not(Formula::and(a.clone(), b.clone()));
        let cs = dnf_clauses(&f, 1000).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 1 && !c[0].positive));
    }

    #[test]
    fn dnf_preserves_truth() {
        let a = Formula::lt(x(), Term::int(1));
        let b = Formula::lt(Term::int(-3), x());
        let c = Formula::eq(x() * x(), Term::int(4));
        let f = Formula::and(Formula::or(a.clone(), c.clone()), Formula::or(Formula::not(b.clone()), c.clone()));
        let g = to_dnf(&f, 1000).unwrap();
        for v in -6..6 {
            let env: Assignment = [(Name::from("x"), int(v))].into_iter().collect();
            assert_eq!(eval_qf(&f, &env).unwrap(), eval_qf(&g, &env).unwrap());
        }
    }

    #[test]
    fn dnf_cap_is_enforced() {
        let lits: Vec<Formula> = (0..30)
            .map(|i| Formula::or(Formula::eq(x(), Term::int(i)), Formula::eq(x(), Term::int(-i - 100))))
            .collect();
        let f = Formula::conj(lits);
        assert!(matches!(dnf_clauses(&f, 10_000), Err(Error::Blowup { .. })));
    }

    #[test]
    fn normalize_atoms_examples() {
        let f = normalize_atoms(&Formula::not(Formula::eq(x(), Term::int(3))), "x").unwrap();
        assert_eq!(f.to_string(), "0 < x - 3 or 0 < 3 - x");
        let f = normalize_atoms(&Formula::lt(x(), Term::int(5)), "x").unwrap();
        assert_eq!(f.to_string(), "0 < 5 - x");
        let f = normalize_atoms(&Formula::not(Formula::lt(x(), Term::int(5))), "x").unwrap();
        assert_eq!(f.to_string(), "0 < x - 5 or x - 5 = 0");
        assert!(normalize_atoms(&Formula::dn(2, x() + Term::int(1)), "x").is_err());
    }

    #[test]
    fn simple_form_check() {
        let good = Formula::and(Formula::lt(Term::zero(), x() * x() - Term::int(2)), Formula::dn(3, Term::mul(Term::Pow2(2), x())));
        assert!(is_simple_in(&good, "x"));
        let bad = Formula::dn(3, Term::mul(Term::Pow2(3), x()));
        assert!(!is_simple_in(&bad, "x"));
        let bad = Formula::lt(Term::zero(), Term::lambda(x()));
        assert!(!is_simple_in(&bad, "x"));
    }

    #[test]
    fn prenex_renames_apart() {
        let inner = Formula::exists("y", Formula::lt(x(), Term::var("y")));
        let f = Formula::and(inner.clone(), Formula::forall("y", Formula::lt(Term::var("y"), x())));
        let (prefix, m) = prenex(&f);
        assert_eq!(prefix.len(), 2);
        assert_ne!(prefix[0].1, prefix[1].1);
        assert!(m.is_quantifier_free());
    }
}
