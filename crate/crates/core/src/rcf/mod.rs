//! Quantifier elimination for the ordered field language. Terms outside that
//! language (`λ` terms, quotients by non-constants) are treated as opaque
//! parameters provided they do not mention a quantified variable.

mod kernel;

pub use kernel::Sign;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::error::{Error, Result};
use crate::eval::decide_ground_sentence;
use crate::formula::{fresh_name, Atom, Formula, Literal};
use crate::limits::Guard;
use crate::mpoly::Poly;
use crate::normal::{dnf_clauses, nnf};
use crate::simplify::{simplify, simplify_term};
use crate::term::{Name, Term};
use crate::upoly::Rel;

use kernel::Kernel;

/// Opaque subterms replaced by fresh parameter names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamAbstraction {
    pub params: BTreeMap<Term, Name>,
}

impl ParamAbstraction {
    /// Puts the abstracted terms back.
    pub fn restore(&self, f: &Formula) -> Formula {
        let back: BTreeMap<&Name, &Term> = self.params.iter().map(|(t, n)| (n, t)).collect();
        f.map_terms(&mut |t| {
            t.map_bottom_up(&mut |s| match &s {
                Term::Var(v) => back.get(v).map(|t| (*t).clone()).unwrap_or(s),
                _ => s,
            })
        })
    }
}

fn bound_names(f: &Formula) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    f.visit(&mut |g| {
        if let Formula::Exists(x, _) | Formula::Forall(x, _) = g {
            out.insert(x.clone());
        }
    });
    out
}

struct Abstractor {
    bound: BTreeSet<Name>,
    avoid: BTreeSet<Name>,
    abs: ParamAbstraction,
    err: Option<Error>,
}

impl Abstractor {
    fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => t.clone(),
            Term::Add(a, b) => Term::add(self.term(a), self.term(b)),
            Term::Sub(a, b) => Term::sub(self.term(a), self.term(b)),
            Term::Mul(a, b) => Term::mul(self.term(a), self.term(b)),
            Term::Div(a, b) if simplify_term(b).as_const().is_some() => Term::div(self.term(a), (**b).clone()),
            _ => {
                if t.contains_any(&self.bound) {
                    self.err.get_or_insert_with(|| Error::Contract(format!("quantified variable inside the opaque term {t}")));
                    return t.clone();
                }
                if let Some(n) = self.abs.params.get(t) {
                    return Term::Var(n.clone());
                }
                let n = fresh_name("p", &self.avoid);
                self.avoid.insert(n.clone());
                self.abs.params.insert(t.clone(), n.clone());
                Term::Var(n)
            }
        }
    }
}

/// Replaces maximal non-field subterms by parameters. Fails when such a term,
/// or a `D_n` atom, mentions a quantified variable.
pub fn abstract_params(f: &Formula) -> Result<(Formula, ParamAbstraction)> {
    let mut st = Abstractor { bound: bound_names(f), avoid: f.all_names(), abs: ParamAbstraction::default(), err: None };
    let g = f.map_atoms(&mut |a| match a {
        Atom::Dn { arg, .. } => {
            if arg.contains_any(&st.bound) {
                st.err.get_or_insert_with(|| Error::Contract("a D_n atom mentions a quantified variable".into()));
            }
            Formula::Atom(a.clone())
        }
        Atom::Eq(l, r) => Formula::Atom(Atom::Eq(st.term(l), st.term(r))),
        Atom::Lt(l, r) => Formula::Atom(Atom::Lt(st.term(l), st.term(r))),
    });
    match st.err {
        Some(e) => Err(e),
        None => Ok((g, st.abs)),
    }
}

/// Counters and a memo table for repeated eliminations.
#[derive(Default)]
pub struct RcfEngine {
    cache: BTreeMap<Formula, Formula>,
    pub calls: u64,
    pub splits: u64,
}

impl RcfEngine {
    pub fn new() -> Self {
        RcfEngine::default()
    }

    /// A quantifier-free formula equivalent to `f` over the reals.
    pub fn qe(&mut self, f: &Formula, guard: &Guard) -> Result<Formula> {
        if f.is_quantifier_free() {
            return Ok(f.clone());
        }
        if let Some(g) = self.cache.get(f) {
            return Ok(g.clone());
        }
        self.calls += 1;
        let (g, abs) = abstract_params(f)?;
        let out = self.lift(&g, guard)?;
        let out = simplify(&abs.restore(&out));
        self.cache.insert(f.clone(), out.clone());
        Ok(out)
    }

    fn lift(&mut self, f: &Formula, guard: &Guard) -> Result<Formula> {
        Ok(match f {
            Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
            Formula::Not(a) => Formula::negate(self.lift(a, guard)?),
            Formula::And(a, b) => Formula::and2(self.lift(a, guard)?, self.lift(b, guard)?),
            Formula::Or(a, b) => Formula::or2(self.lift(a, guard)?, self.lift(b, guard)?),
            Formula::Forall(x, a) => {
                let inner = Formula::Exists(x.clone(), Rc::new(Formula::negate((**a).clone())));
                Formula::negate(self.lift(&inner, guard)?)
            }
            Formula::Exists(x, a) => {
                let body = simplify(&self.lift(a, guard)?);
                let clauses = dnf_clauses(&nnf(&body), guard.limits.dnf_cap)?;
                let mut out = Vec::with_capacity(clauses.len());
                for c in clauses {
                    let (with, without): (Vec<Literal>, Vec<Literal>) = c.into_iter().partition(|l| l.atom.contains_var(x));
                    let rest = Formula::conj(without.iter().map(|l| l.to_formula()).collect());
                    if with.is_empty() {
                        out.push(rest);
                        continue;
                    }
                    let q = self.exists_conj(x, &with, guard)?;
                    out.push(Formula::and2(rest, q));
                    guard.check_time()?;
                }
                simplify(&Formula::disj(out))
            }
        })
    }

    fn exists_conj(&mut self, x: &str, lits: &[Literal], guard: &Guard) -> Result<Formula> {
        let mut names: Vec<Term> = alloc::vec![Term::var(x)];
        let mut index: BTreeMap<Term, u32> = BTreeMap::new();
        let mut leaf = |t: &Term| -> Option<u32> {
            match t {
                Term::Var(v) if &**v == x => Some(0),
                Term::Var(_) => Some(*index.entry(t.clone()).or_insert_with(|| {
                    names.push(t.clone());
                    (names.len() - 1) as u32
                })),
                _ => None,
            }
        };
        let mut pols: Vec<Poly> = Vec::new();
        let mut rels: Vec<(usize, Rel)> = Vec::new();
        for l in lits {
            let (diff, rel) = match &l.atom {
                Atom::Eq(a, b) => (Term::sub(a.clone(), b.clone()), if l.positive { Rel::Eq } else { Rel::Ne }),
                Atom::Lt(a, b) => (Term::sub(b.clone(), a.clone()), if l.positive { Rel::Gt } else { Rel::Le }),
                Atom::Dn { .. } => return Err(Error::Contract("a D_n atom mentions a quantified variable".into())),
            };
            let p = Poly::from_term(&diff, &mut leaf)
                .map_err(|_| Error::NotPolynomial { var: x.into(), term: format!("{diff}") })?;
            let k = match pols.iter().position(|q| *q == p) {
                Some(k) => k,
                None => {
                    pols.push(p);
                    pols.len() - 1
                }
            };
            rels.push((k, rel));
        }
        let lits: Vec<(Poly, Rel)> = rels.into_iter().map(|(k, r)| (pols[k].clone(), r)).collect();
        self.solve(&names, lits, guard)
    }

    /// `∃x` (variable 0) of a conjunction of sign conditions. An equation
    /// linear in `x` is used to substitute `x` away; the rest goes to the
    /// cylindrical kernel.
    fn solve(&mut self, names: &[Term], lits: Vec<(Poly, Rel)>, guard: &Guard) -> Result<Formula> {
        let (free, lits): (Vec<(Poly, Rel)>, Vec<(Poly, Rel)>) = lits.into_iter().partition(|(p, _)| !p.contains_var(0));
        let name = |v: u32| names[v as usize].clone();
        let side = Formula::conj(free.iter().map(|(p, r)| sign_formula(&p.to_term(&name), *r)).collect());
        if lits.is_empty() {
            return Ok(side);
        }
        if lits.iter().all(|(p, _)| p.degree(0) == 1) && !lits.iter().any(|(_, r)| *r == Rel::Eq) {
            return Ok(Formula::and(side, linear_test_points(&lits, &name)));
        }
        let Some(k) = lits.iter().position(|(p, r)| *r == Rel::Eq && p.degree(0) == 1) else {
            let mut pols: Vec<Poly> = Vec::new();
            let mut rels = Vec::with_capacity(lits.len());
            for (p, r) in lits {
                let k = pols.iter().position(|q| *q == p).unwrap_or_else(|| {
                    pols.push(p);
                    pols.len() - 1
                });
                rels.push((k, r));
            }
            let kernel = Kernel { guard, names, splits: Cell::new(0) };
            let out = kernel.exists_conj(&pols, &rels)?;
            self.splits += kernel.splits.get();
            return Ok(Formula::and2(side, out));
        };
        let mut rest = lits;
        let (eq, _) = rest.remove(k);
        let c = eq.coeffs_in(0);
        let (b, a) = (&c[0], &c[1]);
        // Where a ≠ 0, x = -b/a. Multiplying q(-b/a) by an even power of a
        // clears the denominator and keeps the sign.
        let substituted: Vec<Formula> = rest
            .iter()
            .map(|(q, r)| {
                let d = q.degree(0);
                let even = d + d % 2;
                let mut acc = Poly::zero();
                for (i, qi) in q.coeffs_in(0).iter().enumerate() {
                    let term = qi.mul(&b.neg().pow(i as u32)).mul(&a.pow((even - i) as u32));
                    acc = acc.add(&term);
                }
                sign_formula(&acc.to_term(&name), *r)
            })
            .collect();
        let a_term = a.to_term(&name);
        let nonzero = Formula::and(Formula::not(Formula::eq(a_term.clone(), Term::zero())), Formula::conj(substituted));
        if a.as_const().is_some() {
            return Ok(Formula::and(side, nonzero));
        }
        let mut degenerate = rest;
        degenerate.push((b.clone(), Rel::Eq));
        let zero = Formula::and(Formula::eq(a_term, Term::zero()), self.solve(names, degenerate, guard)?);
        guard.check_time()?;
        Ok(Formula::and(side, Formula::or(nonzero, zero)))
    }
}

/// `∃x` of a conjunction of sign conditions on polynomials linear in `x`
/// (variable 0), by substituting test points. The leftmost point of a
/// component of the solution set is `-∞`, a root of some polynomial plus an
/// infinitesimal, or the root of a polynomial whose relation admits zero.
fn linear_test_points(lits: &[(Poly, Rel)], name: &dyn Fn(u32) -> Term) -> Formula {
    let coeffs: Vec<(Poly, Poly)> = lits
        .iter()
        .map(|(p, _)| {
            let c = p.coeffs_in(0);
            (c[1].clone(), c[0].clone())
        })
        .collect();
    let term = |p: &Poly| p.to_term(name);
    let mut points = Vec::new();
    // -∞: the sign of a·x + b is that of -a, or of b when a = 0.
    points.push(Formula::conj(
        lits.iter().zip(&coeffs).map(|((_, r), (a, b))| lex_sign(&term(&a.neg()), &term(b), *r)).collect(),
    ));
    for (i, (ai, bi)) in coeffs.iter().enumerate() {
        // At r = -bi/ai, aj·r + bj has the sign of ai·(ai·bj - aj·bi).
        let at: Vec<Term> = coeffs.iter().map(|(aj, bj)| term(&ai.mul(&ai.mul(bj).sub(&aj.mul(bi))))).collect();
        let defined = Formula::not(Formula::eq(term(ai), Term::zero()));
        let after = lits.iter().zip(&coeffs).zip(&at).map(|(((_, r), (aj, _)), n)| lex_sign(n, &term(aj), *r)).collect();
        points.push(Formula::and(defined.clone(), Formula::conj(after)));
        if matches!(lits[i].1, Rel::Ge | Rel::Le) {
            let exact = lits.iter().zip(&at).map(|((_, r), n)| sign_formula(n, *r)).collect();
            points.push(Formula::and(defined, Formula::conj(exact)));
        }
    }
    Formula::disj(points)
}

/// `rel` applied to the sign of `p`, or of `s` where `p` vanishes.
fn lex_sign(p: &Term, s: &Term, r: Rel) -> Formula {
    let pz = Formula::eq(p.clone(), Term::zero());
    let tie = |rel| Formula::and(pz.clone(), sign_formula(s, rel));
    let gt = || Formula::or(sign_formula(p, Rel::Gt), tie(Rel::Gt));
    let lt = || Formula::or(sign_formula(p, Rel::Lt), tie(Rel::Lt));
    match r {
        Rel::Gt => gt(),
        Rel::Lt => lt(),
        Rel::Le => Formula::not(gt()),
        Rel::Ge => Formula::not(lt()),
        Rel::Eq => tie(Rel::Eq),
        Rel::Ne => Formula::not(tie(Rel::Eq)),
    }
}

fn sign_formula(t: &Term, r: Rel) -> Formula {
    let z = Term::zero();
    match r {
        Rel::Eq => Formula::eq(t.clone(), z),
        Rel::Ne => Formula::not(Formula::eq(t.clone(), z)),
        Rel::Gt => Formula::lt(z, t.clone()),
        Rel::Ge => Formula::le(z, t.clone()),
        Rel::Lt => Formula::lt(t.clone(), z),
        Rel::Le => Formula::le(t.clone(), z),
    }
}

/// Quantifier elimination over the reals with opaque parameters.
pub fn qe_rcf(f: &Formula, guard: &Guard) -> Result<Formula> {
    RcfEngine::new().qe(f, guard)
}

/// Truth of a sentence of the ordered field language over the reals.
pub fn decide_rcf_sentence(f: &Formula, guard: &Guard) -> Result<bool> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::Unbound(format!("{v}")));
    }
    decide_ground_sentence(&qe_rcf(f, guard)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, Assignment};
    use crate::rational::{int, ratio};

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    fn g() -> Guard<'static> {
        Guard::default()
    }

    #[test]
    fn sentences() {
        let x = v("x");
        let two = Formula::exists("x", Formula::eq(x.clone() * x.clone(), Term::int(2)));
        assert!(decide_rcf_sentence(&two, &g()).unwrap());
        let sq = Formula::forall("x", Formula::le(Term::zero(), x.clone() * x.clone()));
        assert!(decide_rcf_sentence(&sq, &g()).unwrap());
        let none = Formula::exists("x", Formula::eq(x.clone() * x.clone() + Term::one(), Term::zero()));
        assert!(!decide_rcf_sentence(&none, &g()).unwrap());
    }

    #[test]
    fn discriminant() {
        let (x, b, c) = (v("x"), v("b"), v("c"));
        let f = Formula::exists("x", Formula::eq(x.clone() * x.clone() + b.clone() * x.clone() + c.clone(), Term::zero()));
        let q = qe_rcf(&f, &g()).unwrap();
        assert!(q.is_quantifier_free());
        for bv in -4..=4 {
            for cv in -4..=4 {
                let env: Assignment = [(Name::from("b"), int(bv)), (Name::from("c"), int(cv))].into_iter().collect();
                assert_eq!(eval_qf(&q, &env).unwrap(), bv * bv - 4 * cv >= 0, "b={bv} c={cv}: {q}");
            }
        }
    }

    #[test]
    fn unbounded_and_square_roots() {
        let (x, a, c) = (v("x"), v("a"), v("c"));
        let f = Formula::exists("x", Formula::lt(a.clone(), x.clone()));
        assert_eq!(qe_rcf(&f, &g()).unwrap(), Formula::True);
        let f = Formula::exists("x", Formula::eq(x.clone() * x.clone(), c.clone()));
        let q = qe_rcf(&f, &g()).unwrap();
        for (cv, want) in [(int(-1), false), (int(0), true), (int(2), true), (ratio(-1, 3), false)] {
            let env: Assignment = [(Name::from("c"), cv)].into_iter().collect();
            assert_eq!(eval_qf(&q, &env).unwrap(), want);
        }
    }

    #[test]
    fn parameters_are_abstracted() {
        let (z, y) = (v("z"), v("y"));
        let f = Formula::exists("z", Formula::eq(z.clone() * z.clone(), Term::lambda(y.clone())));
        let (h, abs) = abstract_params(&f).unwrap();
        assert_eq!(abs.params.len(), 1);
        assert_eq!(abs.restore(&h), f);
        let f = Formula::exists("z", Formula::lt(Term::lambda(Term::lambda(y.clone())), z.clone() * Term::lambda(y.clone())));
        let (_, abs) = abstract_params(&f).unwrap();
        assert_eq!(abs.params.len(), 2);
        let bad = Formula::exists("z", Formula::lt(Term::lambda(z.clone()), Term::one()));
        assert!(abstract_params(&bad).is_err());
        let q = qe_rcf(&Formula::exists("z", Formula::eq(z.clone() * z.clone(), Term::lambda(y.clone()))), &g()).unwrap();
        for yv in [int(-3), int(0), ratio(1, 2), int(9)] {
            let env: Assignment = [(Name::from("y"), yv.clone())].into_iter().collect();
            assert!(eval_qf(&q, &env).unwrap() == (crate::rational::lambda(&yv) >= int(0)));
        }
    }

    #[test]
    fn two_blocks() {
        // forall a exists x. x^3 + a x = 1 holds? cubic always has a real root: true
        let (x, a) = (v("x"), v("a"));
        let f = Formula::forall(
            "a",
            Formula::exists("x", Formula::eq(x.clone() * x.clone() * x.clone() + a.clone() * x.clone(), Term::one())),
        );
        assert!(decide_rcf_sentence(&f, &g()).unwrap());
        // exists u > 0 forall x (u <= x <= 4u -> x^2 - 3 > 0): true (u = 2)
        let u = v("u");
        let body = Formula::implies(
            Formula::and(Formula::le(u.clone(), x.clone()), Formula::le(x.clone(), Term::int(4) * u.clone())),
            Formula::lt(Term::int(3), x.clone() * x.clone()),
        );
        let f = Formula::exists("u", Formula::and(Formula::lt(Term::zero(), u.clone()), Formula::forall("x", body)));
        assert!(decide_rcf_sentence(&f, &g()).unwrap());
    }
}
