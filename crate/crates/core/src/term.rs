//! Terms of the language: rational constants, power-of-two literals, variables,
//! field operations and the function `λ` (largest power of two below).

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use core::ops;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{self, int};

/// Variable names are shared strings.
pub type Name = Rc<str>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Name),
    Const(BigRational),
    /// The literal `2^k`; kept distinct so rewrites never lose the exponent.
    Pow2(i64),
    Add(Rc<Term>, Rc<Term>),
    Sub(Rc<Term>, Rc<Term>),
    Mul(Rc<Term>, Rc<Term>),
    /// Total division: `t / 0 = 0`.
    Div(Rc<Term>, Rc<Term>),
    Lambda(Rc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Name::from(name))
    }

    pub fn name(name: &Name) -> Term {
        Term::Var(name.clone())
    }

    pub fn int(n: i64) -> Term {
        Term::Const(int(n))
    }

    pub fn rat(n: i64, d: i64) -> Term {
        Term::Const(rational::ratio(n, d))
    }

    pub fn constant(q: BigRational) -> Term {
        Term::Const(q)
    }

    pub fn zero() -> Term {
        Term::Const(BigRational::zero())
    }

    pub fn one() -> Term {
        Term::Const(BigRational::one())
    }

    pub fn pow2(k: i64) -> Term {
        Term::Pow2(k)
    }

    pub fn lambda(t: Term) -> Term {
        Term::Lambda(Rc::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Rc::new(a), Rc::new(b))
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Rc::new(a), Rc::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Rc::new(a), Rc::new(b))
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term::Div(Rc::new(a), Rc::new(b))
    }

    /// `0 - t`.
    pub fn neg(t: Term) -> Term {
        match t {
            Term::Const(c) => Term::Const(-c),
            t => Term::sub(Term::zero(), t),
        }
    }

    /// `t * t * ... * t` (`k >= 1` factors); `t^0 = 1`.
    pub fn power(t: &Term, k: u32) -> Term {
        if k == 0 {
            return Term::one();
        }
        let mut acc = t.clone();
        for _ in 1..k {
            acc = Term::mul(acc, t.clone());
        }
        acc
    }

    /// Product that skips unit factors and collapses zero.
    pub fn times(a: Term, b: Term) -> Term {
        if a.is_zero() || b.is_zero() {
            return Term::zero();
        }
        if a.is_one() {
            return b;
        }
        if b.is_one() {
            return a;
        }
        match (&a, &b) {
            (Term::Const(x), Term::Const(y)) => Term::Const(x * y),
            (Term::Pow2(x), Term::Pow2(y)) => Term::Pow2(x + y),
            _ => Term::mul(a, b),
        }
    }

    /// Sum that skips zero summands.
    pub fn plus(a: Term, b: Term) -> Term {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        match (&a, &b) {
            (Term::Const(x), Term::Const(y)) => Term::Const(x + y),
            _ => Term::add(a, b),
        }
    }

    /// Difference that skips a zero subtrahend.
    pub fn minus(a: Term, b: Term) -> Term {
        if b.is_zero() {
            return a;
        }
        match (&a, &b) {
            (Term::Const(x), Term::Const(y)) => Term::Const(x - y),
            _ => Term::sub(a, b),
        }
    }

    /// `2^k * t`, omitting the factor when `k == 0`.
    pub fn shifted(k: i64, t: Term) -> Term {
        if k == 0 {
            t
        } else {
            Term::mul(Term::Pow2(k), t)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        match self {
            Term::Const(c) => c.is_one(),
            Term::Pow2(0) => true,
            _ => false,
        }
    }

    pub fn as_const(&self) -> Option<BigRational> {
        match self {
            Term::Const(c) => Some(c.clone()),
            Term::Pow2(k) => Some(rational::pow2(*k)),
            _ => None,
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => &**v == x,
            Term::Const(_) | Term::Pow2(_) => false,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.contains_var(x) || b.contains_var(x)
            }
            Term::Lambda(a) => a.contains_var(x),
        }
    }

    pub fn contains_any(&self, xs: &BTreeSet<Name>) -> bool {
        match self {
            Term::Var(v) => xs.contains(v),
            Term::Const(_) | Term::Pow2(_) => false,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.contains_any(xs) || b.contains_any(xs)
            }
            Term::Lambda(a) => a.contains_any(xs),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) | Term::Pow2(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Lambda(a) => a.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        let mut s = BTreeSet::new();
        self.collect_vars(&mut s);
        s
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) | Term::Pow2(_) => true,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.is_ground() && b.is_ground()
            }
            Term::Lambda(a) => a.is_ground(),
        }
    }

    pub fn has_division(&self) -> bool {
        match self {
            Term::Div(_, _) => true,
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => false,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => a.has_division() || b.has_division(),
            Term::Lambda(a) => a.has_division(),
        }
    }

    pub fn has_lambda(&self) -> bool {
        match self {
            Term::Lambda(_) => true,
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => false,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.has_lambda() || b.has_lambda()
            }
        }
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => 1,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => 1 + a.size() + b.size(),
            Term::Lambda(a) => 1 + a.size(),
        }
    }

    /// Rebuilds the term bottom-up, letting `f` rewrite each node after its children.
    pub fn map_bottom_up(&self, f: &mut dyn FnMut(Term) -> Term) -> Term {
        let t = match self {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Sub(a, b) => Term::sub(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Mul(a, b) => Term::mul(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Div(a, b) => Term::div(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Lambda(a) => Term::lambda(a.map_bottom_up(f)),
        };
        f(t)
    }

    /// Replaces every occurrence of the subterm `from` by `to`.
    pub fn replace(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.replace(from, to), b.replace(from, to)),
            Term::Sub(a, b) => Term::sub(a.replace(from, to), b.replace(from, to)),
            Term::Mul(a, b) => Term::mul(a.replace(from, to), b.replace(from, to)),
            Term::Div(a, b) => Term::div(a.replace(from, to), b.replace(from, to)),
            Term::Lambda(a) => Term::lambda(a.replace(from, to)),
        }
    }

    /// Substitutes `t` for the variable `x`.
    pub fn subst(&self, x: &str, t: &Term) -> Term {
        if !self.contains_var(x) {
            return self.clone();
        }
        match self {
            Term::Var(v) if &**v == x => t.clone(),
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.subst(x, t), b.subst(x, t)),
            Term::Sub(a, b) => Term::sub(a.subst(x, t), b.subst(x, t)),
            Term::Mul(a, b) => Term::mul(a.subst(x, t), b.subst(x, t)),
            Term::Div(a, b) => Term::div(a.subst(x, t), b.subst(x, t)),
            Term::Lambda(a) => Term::lambda(a.subst(x, t)),
        }
    }

    /// Visits every subterm (pre-order).
    pub fn visit(&self, f: &mut dyn FnMut(&Term)) {
        f(self);
        match self {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::Lambda(a) => a.visit(f),
        }
    }
}

impl ops::Add for Term {
    type Output = Term;
    fn add(self, rhs: Term) -> Term {
        Term::add(self, rhs)
    }
}

impl ops::Sub for Term {
    type Output = Term;
    fn sub(self, rhs: Term) -> Term {
        Term::sub(self, rhs)
    }
}

impl ops::Mul for Term {
    type Output = Term;
    fn mul(self, rhs: Term) -> Term {
        Term::mul(self, rhs)
    }
}

impl ops::Div for Term {
    type Output = Term;
    fn div(self, rhs: Term) -> Term {
        Term::div(self, rhs)
    }
}

impl ops::Neg for Term {
    type Output = Term;
    fn neg(self) -> Term {
        Term::neg(self)
    }
}

impl From<i64> for Term {
    fn from(n: i64) -> Term {
        Term::int(n)
    }
}

impl From<BigRational> for Term {
    fn from(q: BigRational) -> Term {
        Term::Const(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replace_and_subst() {
        let x = Term::var("x");
        let t = Term::lambda(x.clone() + Term::int(1)) * x.clone();
        let s = t.subst("x", &Term::int(3));
        assert!(s.is_ground());
        let r = t.replace(&Term::lambda(x.clone() + Term::int(1)), &Term::var("z"));
        assert_eq!(r, Term::var("z") * x);
    }

    #[test]
    fn smart_constructors_fold() {
        assert_eq!(Term::times(Term::one(), Term::var("x")), Term::var("x"));
        assert_eq!(Term::times(Term::Pow2(2), Term::Pow2(-1)), Term::Pow2(1));
        assert!(Term::times(Term::zero(), Term::var("x")).is_zero());
        assert_eq!(Term::plus(Term::int(2), Term::int(3)), Term::int(5));
    }
}
