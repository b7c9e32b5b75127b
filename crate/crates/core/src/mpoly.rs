//! Dense recursive multivariate polynomials over the rationals.
//!
//! Variables are indices; a smaller index is an outer (main) variable, so a
//! `Rec(v, cs)` node only has coefficients in variables greater than `v`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::term::Term;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Poly {
    Const(BigRational),
    /// `Σ cs[i] · v^i` with at least two coefficients and a nonzero last one.
    Rec(u32, Vec<Poly>),
}

/// A term could not be read as a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotPolynomial;

impl Poly {
    pub fn zero() -> Poly {
        Poly::Const(BigRational::zero())
    }

    pub fn one() -> Poly {
        Poly::Const(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::Const(c)
    }

    pub fn var(v: u32) -> Poly {
        Poly::Rec(v, vec![Poly::zero(), Poly::one()])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Poly::Const(c) if c.is_zero())
    }

    pub fn as_const(&self) -> Option<&BigRational> {
        match self {
            Poly::Const(c) => Some(c),
            Poly::Rec(..) => None,
        }
    }

    fn mk(v: u32, mut cs: Vec<Poly>) -> Poly {
        while cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
        match cs.len() {
            0 => Poly::zero(),
            1 => cs.pop().unwrap(),
            _ => Poly::Rec(v, cs),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        match (self, other) {
            (Poly::Const(a), Poly::Const(b)) => Poly::Const(a + b),
            (Poly::Const(_), Poly::Rec(v, cs)) | (Poly::Rec(v, cs), Poly::Const(_)) => {
                let c = if let Poly::Const(_) = self { self } else { other };
                let mut cs = cs.clone();
                cs[0] = cs[0].add(c);
                Poly::mk(*v, cs)
            }
            (Poly::Rec(v, cs), Poly::Rec(w, ds)) => {
                if v == w {
                    let n = cs.len().max(ds.len());
                    let mut out = Vec::with_capacity(n);
                    for i in 0..n {
                        out.push(match (cs.get(i), ds.get(i)) {
                            (Some(a), Some(b)) => a.add(b),
                            (Some(a), None) => a.clone(),
                            (None, Some(b)) => b.clone(),
                            (None, None) => unreachable!(),
                        });
                    }
                    Poly::mk(*v, out)
                } else if v < w {
                    let mut cs = cs.clone();
                    cs[0] = cs[0].add(other);
                    Poly::mk(*v, cs)
                } else {
                    let mut ds = ds.clone();
                    ds[0] = ds[0].add(self);
                    Poly::mk(*w, ds)
                }
            }
        }
    }

    pub fn neg(&self) -> Poly {
        match self {
            Poly::Const(c) => Poly::Const(-c),
            Poly::Rec(v, cs) => Poly::Rec(*v, cs.iter().map(|c| c.neg()).collect()),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        match self {
            Poly::Const(c) => Poly::Const(c * k),
            Poly::Rec(v, cs) => Poly::Rec(*v, cs.iter().map(|c| c.scale(k)).collect()),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        match (self, other) {
            (Poly::Const(a), _) => other.scale(a),
            (_, Poly::Const(b)) => self.scale(b),
            (Poly::Rec(v, cs), Poly::Rec(w, ds)) => {
                if v == w {
                    let mut out = vec![Poly::zero(); cs.len() + ds.len() - 1];
                    for (i, a) in cs.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (j, b) in ds.iter().enumerate() {
                            if !b.is_zero() {
                                out[i + j] = out[i + j].add(&a.mul(b));
                            }
                        }
                    }
                    Poly::mk(*v, out)
                } else if v < w {
                    Poly::mk(*v, cs.iter().map(|c| c.mul(other)).collect())
                } else {
                    Poly::mk(*w, ds.iter().map(|d| self.mul(d)).collect())
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `v^k · self`, for `v` not smaller than any variable of `self`'s head node.
    pub fn shift(&self, v: u32, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match self {
            Poly::Rec(w, cs) if *w == v => {
                let mut out = vec![Poly::zero(); k];
                out.extend(cs.iter().cloned());
                Poly::Rec(v, out)
            }
            _ => {
                let mut out = vec![Poly::zero(); k];
                out.push(self.clone());
                Poly::Rec(v, out)
            }
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        match self {
            Poly::Const(_) => 0,
            Poly::Rec(w, cs) => {
                if *w == v {
                    cs.len() - 1
                } else if *w < v {
                    cs.iter().map(|c| c.degree(v)).max().unwrap_or(0)
                } else {
                    0
                }
            }
        }
    }

    /// Leading coefficient in the main variable `v` (which must be minimal).
    pub fn head(&self, v: u32) -> Poly {
        match self {
            Poly::Rec(w, cs) if *w == v => cs.last().unwrap().clone(),
            _ => self.clone(),
        }
    }

    /// Removes the leading term in the main variable `v`.
    pub fn behead(&self, v: u32) -> Poly {
        match self {
            Poly::Rec(w, cs) if *w == v => Poly::mk(v, cs[..cs.len() - 1].to_vec()),
            _ => Poly::zero(),
        }
    }

    /// Coefficients in the main variable `v` (low to high).
    pub fn coeffs_in(&self, v: u32) -> Vec<Poly> {
        match self {
            Poly::Rec(w, cs) if *w == v => cs.clone(),
            _ => vec![self.clone()],
        }
    }

    pub fn contains_var(&self, v: u32) -> bool {
        match self {
            Poly::Const(_) => false,
            Poly::Rec(w, cs) => *w == v || (*w < v && cs.iter().any(|c| c.contains_var(v))),
        }
    }

    pub fn derivative(&self, v: u32) -> Poly {
        match self {
            Poly::Const(_) => Poly::zero(),
            Poly::Rec(w, cs) => {
                if *w == v {
                    let out = cs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, c)| c.scale(&BigRational::from_integer((i as i64).into())))
                        .collect();
                    Poly::mk(v, out)
                } else if *w < v {
                    Poly::mk(*w, cs.iter().map(|c| c.derivative(v)).collect())
                } else {
                    Poly::zero()
                }
            }
        }
    }

    pub fn eval(&self, vals: &dyn Fn(u32) -> BigRational) -> BigRational {
        match self {
            Poly::Const(c) => c.clone(),
            Poly::Rec(v, cs) => {
                let x = vals(*v);
                let mut acc = BigRational::zero();
                for c in cs.iter().rev() {
                    acc = acc * &x + c.eval(vals);
                }
                acc
            }
        }
    }

    /// The rational coefficient of the lexicographically leading monomial.
    pub fn leading_constant(&self) -> &BigRational {
        match self {
            Poly::Const(c) => c,
            Poly::Rec(_, cs) => cs.last().unwrap().leading_constant(),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        if let Poly::Rec(v, cs) = self {
            out.insert(*v);
            for c in cs {
                c.collect_vars(out);
            }
        }
    }

    fn for_each_const(&self, f: &mut dyn FnMut(&BigRational)) {
        match self {
            Poly::Const(c) => f(c),
            Poly::Rec(_, cs) => cs.iter().for_each(|c| c.for_each_const(f)),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        self.for_each_const(&mut |c| {
            if !c.is_zero() {
                g = g.gcd(c.numer());
                l = l.lcm(c.denom());
            }
        });
        if g.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(g, l)
        }
    }

    /// Integer-primitive form with a positive leading constant, and whether the sign flipped.
    pub fn primitive(&self) -> (Poly, bool) {
        if self.is_zero() {
            return (self.clone(), false);
        }
        let c = self.content();
        let neg = self.leading_constant().is_negative();
        let k = if neg { -c.recip() } else { c.recip() };
        (self.scale(&k), neg)
    }

    /// Reads a term as a polynomial. `leaf` maps variables and opaque subterms to
    /// indices; division is allowed only by nonzero-free constants.
    pub fn from_term(t: &Term, leaf: &mut dyn FnMut(&Term) -> Option<u32>) -> Result<Poly, NotPolynomial> {
        Ok(match t {
            Term::Const(c) => Poly::Const(c.clone()),
            Term::Pow2(k) => Poly::Const(crate::rational::pow2(*k)),
            Term::Add(a, b) => Poly::from_term(a, leaf)?.add(&Poly::from_term(b, leaf)?),
            Term::Sub(a, b) => Poly::from_term(a, leaf)?.sub(&Poly::from_term(b, leaf)?),
            Term::Mul(a, b) => Poly::from_term(a, leaf)?.mul(&Poly::from_term(b, leaf)?),
            Term::Div(a, b) => {
                if let Some(c) = b.as_const().or_else(|| constant_value(b)) {
                    if c.is_zero() {
                        Poly::zero()
                    } else {
                        Poly::from_term(a, leaf)?.scale(&c.recip())
                    }
                } else {
                    Poly::var(leaf(t).ok_or(NotPolynomial)?)
                }
            }
            Term::Var(_) | Term::Lambda(_) => Poly::var(leaf(t).ok_or(NotPolynomial)?),
        })
    }

    /// Expanded sum of monomials, highest powers of outer variables first.
    pub fn to_term(&self, name: &dyn Fn(u32) -> Term) -> Term {
        let mut monos: Vec<(BigRational, Vec<(u32, usize)>)> = Vec::new();
        self.monomials(&mut Vec::new(), &mut monos);
        let mut acc: Option<Term> = None;
        for (c, m) in monos {
            let mut mono: Option<Term> = None;
            for (v, e) in m {
                let base = name(v);
                for _ in 0..e {
                    mono = Some(match mono {
                        None => base.clone(),
                        Some(t) => Term::mul(t, base.clone()),
                    });
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let piece = match mono {
                None => Term::Const(mag),
                Some(m) if mag.is_one() => m,
                Some(m) => Term::mul(Term::Const(mag), m),
            };
            acc = Some(match acc {
                None if neg => match piece {
                    Term::Const(k) => Term::Const(-k),
                    p => Term::mul(Term::Const(-BigRational::one()), p),
                },
                None => piece,
                Some(a) if neg => Term::sub(a, piece),
                Some(a) => Term::add(a, piece),
            });
        }
        acc.unwrap_or_else(Term::zero)
    }

    /// Nonzero monomials as `(coefficient, [(variable, exponent)])`.
    pub fn monomial_list(&self) -> Vec<(BigRational, Vec<(u32, usize)>)> {
        let mut out = Vec::new();
        self.monomials(&mut Vec::new(), &mut out);
        out
    }

    fn monomials(&self, prefix: &mut Vec<(u32, usize)>, out: &mut Vec<(BigRational, Vec<(u32, usize)>)>) {
        match self {
            Poly::Const(c) => {
                if !c.is_zero() {
                    out.push((c.clone(), prefix.clone()));
                }
            }
            Poly::Rec(v, cs) => {
                for i in (0..cs.len()).rev() {
                    if i > 0 {
                        prefix.push((*v, i));
                    }
                    cs[i].monomials(prefix, out);
                    if i > 0 {
                        prefix.pop();
                    }
                }
            }
        }
    }
}

/// Value of a variable-free, `λ`-free term, if it is one.
fn constant_value(t: &Term) -> Option<BigRational> {
    match t {
        Term::Const(c) => Some(c.clone()),
        Term::Pow2(k) => Some(crate::rational::pow2(*k)),
        Term::Add(a, b) => Some(constant_value(a)? + constant_value(b)?),
        Term::Sub(a, b) => Some(constant_value(a)? - constant_value(b)?),
        Term::Mul(a, b) => Some(constant_value(a)? * constant_value(b)?),
        Term::Div(a, b) => {
            let d = constant_value(b)?;
            let n = constant_value(a)?;
            Some(if d.is_zero() { BigRational::zero() } else { n / d })
        }
        Term::Var(_) | Term::Lambda(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::string::ToString;

    fn v(i: u32) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn ring_laws_on_examples() {
        let p = v(0).add(&v(1)); // x + y
        let sq = p.mul(&p);
        let expect = v(0).mul(&v(0)).add(&v(0).mul(&v(1)).scale(&int(2))).add(&v(1).mul(&v(1)));
        assert_eq!(sq, expect);
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.degree(0), 2);
        assert_eq!(sq.degree(1), 2);
        assert_eq!(sq.head(0), Poly::one());
    }

    #[test]
    fn derivative_and_eval() {
        let p = v(0).pow(3).sub(&v(0).mul(&v(1))); // x^3 - x y
        let d = p.derivative(0); // 3x^2 - y
        let val = d.eval(&|i| if i == 0 { int(2) } else { int(5) });
        assert_eq!(val, int(7));
    }

    #[test]
    fn term_roundtrip() {
        let names = ["x", "y"];
        let t = (Term::var("x") - Term::int(3)) * (Term::var("y") + Term::int(1));
        let mut leaf = |t: &Term| match t {
            Term::Var(n) => names.iter().position(|m| **m == **n).map(|i| i as u32),
            _ => None,
        };
        let p = Poly::from_term(&t, &mut leaf).unwrap();
        let back = p.to_term(&|i| Term::var(names[i as usize]));
        assert_eq!(back.to_string(), "x*y + x - 3*y - 3");
        let p2 = Poly::from_term(&back, &mut leaf).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn primitive_normalizes_scale_and_sign() {
        let p = v(0).scale(&crate::rational::ratio(-2, 3)).add(&Poly::Const(crate::rational::ratio(4, 3)));
        let (q, flipped) = p.primitive();
        assert!(flipped);
        assert_eq!(q, v(0).add(&Poly::Const(int(-2))));
    }
}
