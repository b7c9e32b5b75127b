//! First-order formulas over the ordered field with `D_n` predicates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::term::{Name, Term};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Eq(Term, Term),
    Lt(Term, Term),
    /// `D_n(t)`: `t = 2^k` with `n | k`. `D_1` is the power-of-two predicate `A`.
    Dn { n: u32, arg: Term },
}

impl Atom {
    pub fn power(t: Term) -> Atom {
        Atom::Dn { n: 1, arg: t }
    }

    pub fn terms(&self) -> [Option<&Term>; 2] {
        match self {
            Atom::Eq(a, b) | Atom::Lt(a, b) => [Some(a), Some(b)],
            Atom::Dn { arg, .. } => [Some(arg), None],
        }
    }

    pub fn map_terms(&self, f: &mut dyn FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(a, b) => Atom::Eq(f(a), f(b)),
            Atom::Lt(a, b) => Atom::Lt(f(a), f(b)),
            Atom::Dn { n, arg } => Atom::Dn { n: *n, arg: f(arg) },
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        self.terms().iter().flatten().any(|t| t.contains_var(x))
    }

    pub fn contains_any(&self, xs: &BTreeSet<Name>) -> bool {
        self.terms().iter().flatten().any(|t| t.contains_any(xs))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        for t in self.terms().iter().flatten() {
            t.collect_vars(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.terms().iter().flatten().map(|t| t.size()).sum::<usize>()
    }

    pub fn has_division(&self) -> bool {
        self.terms().iter().flatten().any(|t| t.has_division())
    }
}

/// A possibly negated atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { positive: false, atom }
    }

    pub fn negate(&self) -> Literal {
        Literal { positive: !self.positive, atom: self.atom.clone() }
    }

    pub fn to_formula(&self) -> Formula {
        let f = Formula::Atom(self.atom.clone());
        if self.positive {
            f
        } else {
            Formula::not(f)
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Rc<Formula>),
    And(Rc<Formula>, Rc<Formula>),
    Or(Rc<Formula>, Rc<Formula>),
    Exists(Name, Rc<Formula>),
    Forall(Name, Rc<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Eq(a, b))
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Lt(a, b))
    }

    /// `a <= b` as `not (b < a)`.
    pub fn le(a: Term, b: Term) -> Formula {
        Formula::not(Formula::lt(b, a))
    }

    pub fn dn(n: u32, t: Term) -> Formula {
        Formula::Atom(Atom::Dn { n, arg: t })
    }

    pub fn power(t: Term) -> Formula {
        Formula::dn(1, t)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Rc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Rc::new(a), Rc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Rc::new(a), Rc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn exists(x: &str, f: Formula) -> Formula {
        Formula::Exists(Name::from(x), Rc::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Formula {
        Formula::Forall(Name::from(x), Rc::new(f))
    }

    pub fn exists_all(xs: &[Name], f: Formula) -> Formula {
        xs.iter().rev().fold(f, |acc, x| Formula::Exists(x.clone(), Rc::new(acc)))
    }

    /// Conjunction with unit/zero folding, built as a balanced tree.
    pub fn conj(items: Vec<Formula>) -> Formula {
        let mut v = Vec::with_capacity(items.len());
        for f in items {
            match f {
                Formula::True => {}
                Formula::False => return Formula::False,
                f => v.push(f),
            }
        }
        balanced(v, Formula::True, Formula::and)
    }

    /// Disjunction with unit/zero folding, built as a balanced tree.
    pub fn disj(items: Vec<Formula>) -> Formula {
        let mut v = Vec::with_capacity(items.len());
        for f in items {
            match f {
                Formula::False => {}
                Formula::True => return Formula::True,
                f => v.push(f),
            }
        }
        balanced(v, Formula::False, Formula::or)
    }

    /// Binary `and` with unit folding.
    pub fn and2(a: Formula, b: Formula) -> Formula {
        Formula::conj(alloc::vec![a, b])
    }

    /// Binary `or` with unit folding.
    pub fn or2(a: Formula, b: Formula) -> Formula {
        Formula::disj(alloc::vec![a, b])
    }

    /// Negation with constant folding and double-negation removal.
    pub fn negate(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(g) => (*g).clone(),
            f => Formula::not(f),
        }
    }

    /// Flattened top-level conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::And(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Formula::True => {}
                f => out.push(f),
            }
        }
        out
    }

    /// Flattened top-level disjuncts.
    pub fn disjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Or(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Formula::False => {}
                f => out.push(f),
            }
        }
        out
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                let mut vs = BTreeSet::new();
                a.collect_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, a) | Formula::Forall(x, a) => {
                let fresh = bound.insert(x.clone());
                a.collect_free(bound, out);
                if fresh {
                    bound.remove(x);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| a.collect_vars(&mut out));
        self.visit(&mut |f| {
            if let Formula::Exists(x, _) | Formula::Forall(x, _) = f {
                out.insert(x.clone());
            }
        });
        out
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn is_division_free(&self) -> bool {
        let mut ok = true;
        self.visit_atoms(&mut |a| ok &= !a.has_division());
        ok
    }

    pub fn contains_var(&self, x: &str) -> bool {
        let mut hit = false;
        self.visit_atoms(&mut |a| hit |= a.contains_var(x));
        hit
    }

    pub fn contains_any(&self, xs: &BTreeSet<Name>) -> bool {
        let mut hit = false;
        self.visit_atoms(&mut |a| hit |= a.contains_any(xs));
        hit
    }

    /// Visits every subformula (pre-order).
    pub fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        let mut stack = alloc::vec![self];
        while let Some(g) = stack.pop() {
            f(g);
            match g {
                Formula::True | Formula::False | Formula::Atom(_) => {}
                Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => stack.push(a),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
    }

    pub fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        self.visit(&mut |g| {
            if let Formula::Atom(a) = g {
                f(a)
            }
        });
    }

    /// Collects the distinct atoms.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.clone());
        });
        out
    }

    /// Rewrites every atom; quantifiers are left untouched.
    pub fn map_atoms(&self, f: &mut dyn FnMut(&Atom) -> Formula) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => f(a),
            Formula::Not(a) => Formula::not(a.map_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(x, a) => Formula::Exists(x.clone(), Rc::new(a.map_atoms(f))),
            Formula::Forall(x, a) => Formula::Forall(x.clone(), Rc::new(a.map_atoms(f))),
        }
    }

    /// Applies a term rewrite inside every atom.
    pub fn map_terms(&self, f: &mut dyn FnMut(&Term) -> Term) -> Formula {
        self.map_atoms(&mut |a| Formula::Atom(a.map_terms(f)))
    }

    /// Replaces a subterm everywhere (quantifier-free use; no capture checks).
    pub fn replace_term(&self, from: &Term, to: &Term) -> Formula {
        self.map_terms(&mut |t| t.replace(from, to))
    }

    /// Number of symbols, counting `D_n` as one symbol.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |g| {
            n += match g {
                Formula::Atom(a) => a.size(),
                _ => 1,
            }
        });
        n
    }

    /// Capture-avoiding substitution of `t` for the free variable `x`.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        let tv = t.vars();
        self.subst_inner(x, t, &tv)
    }

    fn subst_inner(&self, x: &str, t: &Term, tv: &BTreeSet<Name>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.map_terms(&mut |s| s.subst(x, t))),
            Formula::Not(a) => Formula::not(a.subst_inner(x, t, tv)),
            Formula::And(a, b) => Formula::and(a.subst_inner(x, t, tv), b.subst_inner(x, t, tv)),
            Formula::Or(a, b) => Formula::or(a.subst_inner(x, t, tv), b.subst_inner(x, t, tv)),
            Formula::Exists(y, a) | Formula::Forall(y, a) => {
                let is_ex = matches!(self, Formula::Exists(..));
                let rebuild = |v: Name, body: Formula| {
                    if is_ex {
                        Formula::Exists(v, Rc::new(body))
                    } else {
                        Formula::Forall(v, Rc::new(body))
                    }
                };
                if &**y == x || !a.free_vars().contains(x) {
                    return self.clone();
                }
                if tv.contains(y) {
                    let mut avoid = self.all_names();
                    avoid.extend(tv.iter().cloned());
                    let y2 = fresh_name(y, &avoid);
                    let renamed = a.subst_inner(y, &Term::Var(y2.clone()), &BTreeSet::from([y2.clone()]));
                    rebuild(y2, renamed.subst_inner(x, t, tv))
                } else {
                    rebuild(y.clone(), a.subst_inner(x, t, tv))
                }
            }
        }
    }
}

fn balanced(mut v: Vec<Formula>, unit: Formula, op: fn(Formula, Formula) -> Formula) -> Formula {
    match v.len() {
        0 => unit,
        1 => v.pop().unwrap(),
        n => {
            let right = v.split_off(n / 2);
            op(balanced(v, unit.clone(), op), balanced(right, unit, op))
        }
    }
}

/// A name derived from `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
    let stem = if stem.is_empty() { "v" } else { stem };
    let mut i = 1u64;
    loop {
        let cand: Name = Name::from(format!("{stem}_{i}").as_str());
        if !avoid.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn free_vars_respect_binders() {
        let f = Formula::exists("y", Formula::and(Formula::lt(x(), y()), Formula::power(y())));
        let fv = f.free_vars();
        assert_eq!(fv.len(), 1);
        assert!(fv.contains("x"));
    }

    #[test]
    fn substitution_avoids_capture() {
        // exists y. x < y   with x := y + 1
        let f = Formula::exists("y", Formula::lt(x(), y()));
        let g = f.substitute("x", &(y() + Term::int(1)));
        match &g {
            Formula::Exists(v, body) => {
                assert_ne!(&**v, "y");
                assert!(body.free_vars().contains("y"));
            }
            _ => panic!("expected a quantifier"),
        }
        assert!(g.free_vars().contains("y"));
    }

    #[test]
    fn conj_and_disj_fold_units() {
        assert_eq!(Formula::conj(alloc::vec![Formula::True, Formula::True]), Formula::True);
        assert_eq!(Formula::disj(alloc::vec![Formula::False, Formula::True]), Formula::True);
        let big = Formula::disj((0..1000).map(|i| Formula::eq(x(), Term::int(i))).collect());
        assert_eq!(big.disjuncts().len(), 1000);
    }
}
