//! Univariate rational polynomials, Sturm sequences and exact real-root isolation.
//!
//! This is independent of the sign-matrix kernel in [`crate::rcf`] and serves as
//! its oracle for univariate problems.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::int;

/// Coefficients from low to high degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(pub Vec<BigRational>);

/// Relation of a polynomial against zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Gt,
    Ge,
    Lt,
    Le,
}

impl Rel {
    pub fn holds(self, s: core::cmp::Ordering) -> bool {
        use core::cmp::Ordering::*;
        match self {
            Rel::Eq => s == Equal,
            Rel::Ne => s != Equal,
            Rel::Gt => s == Greater,
            Rel::Ge => s != Less,
            Rel::Lt => s == Less,
            Rel::Le => s != Greater,
        }
    }

    /// The relation satisfied by `-p` when `p` satisfies `self`.
    pub fn flip(self) -> Rel {
        match self {
            Rel::Gt => Rel::Lt,
            Rel::Lt => Rel::Gt,
            Rel::Ge => Rel::Le,
            Rel::Le => Rel::Ge,
            r => r,
        }
    }

    pub fn negate(self) -> Rel {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Gt => Rel::Le,
            Rel::Le => Rel::Gt,
            Rel::Lt => Rel::Ge,
            Rel::Ge => Rel::Lt,
        }
    }
}

fn sign_of(q: &BigRational) -> core::cmp::Ordering {
    q.cmp(&BigRational::zero())
}

impl UPoly {
    pub fn new(mut cs: Vec<BigRational>) -> UPoly {
        while cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
        UPoly(cs)
    }

    pub fn constant(c: BigRational) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: BigRational) -> UPoly {
        UPoly::new(vec![-r, BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> core::cmp::Ordering {
        sign_of(&self.eval(x))
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = o.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let c = r.lead() / &dl;
            q[k] = c.clone();
            let mut sh = vec![BigRational::zero(); k];
            sh.extend(d.0.iter().map(|x| x * &c));
            r = r.sub(&UPoly::new(sh));
        }
        (UPoly::new(q), r)
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> UPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Standard Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    /// Cauchy bound: every real root lies strictly inside `(-b, b)`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let m = self.0.iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Sorted real roots of a nonzero polynomial.
    pub fn isolate_roots(&self) -> Vec<RootInterval> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let p = self.squarefree();
        let b = p.root_bound();
        let mut out = Vec::new();
        isolate(&p, -b.clone(), b, &mut out);
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }
}

fn sign_changes(seq: &[UPoly], x: &BigRational) -> usize {
    let mut last = core::cmp::Ordering::Equal;
    let mut n = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == core::cmp::Ordering::Equal {
            continue;
        }
        if last != core::cmp::Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// An isolated real root: exactly one root in the open interval `(lo, hi)` with
/// nonzero values at both ends, or the exact rational root `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }
}

/// Isolates the roots of squarefree `p` in `(lo, hi)`; `p(lo)`, `p(hi)` nonzero.
fn isolate(p: &UPoly, lo: BigRational, hi: BigRational, out: &mut Vec<RootInterval>) {
    let seq = p.sturm();
    let mut work = vec![(lo, hi)];
    while let Some((a, b)) = work.pop() {
        let n = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        // Split at a non-root; finitely many roots, so one of these works.
        let mut k = 2i64;
        let m = loop {
            let m = (&a * int(k - 1) + &b) / int(k);
            if !p.eval(&m).is_zero() {
                break m;
            }
            k += 1;
        };
        work.push((a, m.clone()));
        work.push((m, b));
    }
}

/// Narrows an isolating interval of a root of squarefree `p` until its width is at most `eps`.
pub fn refine(p: &UPoly, iv: &RootInterval, eps: &BigRational) -> RootInterval {
    let mut iv = iv.clone();
    while !iv.is_exact() && (&iv.hi - &iv.lo) > *eps {
        let m = iv.midpoint();
        let sm = p.sign_at(&m);
        if sm == core::cmp::Ordering::Equal {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == p.sign_at(&iv.lo) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// Sign of `q` at the root of `p` isolated by `iv` (with `p` squarefree).
fn sign_at_root(p: &UPoly, iv: &RootInterval, q: &UPoly) -> core::cmp::Ordering {
    if iv.is_exact() {
        return q.sign_at(&iv.lo);
    }
    if q.is_zero() {
        return core::cmp::Ordering::Equal;
    }
    let g = p.gcd(q);
    if g.degree() > 0 {
        // The root is a root of q exactly when the gcd changes sign across the interval.
        let gs = g.squarefree();
        let seq = gs.sturm();
        if sign_changes(&seq, &iv.lo) > sign_changes(&seq, &iv.hi) {
            return core::cmp::Ordering::Equal;
        }
    }
    // q has no root in the closed isolating interval once it is narrow enough.
    let qs = q.squarefree();
    let qseq = qs.sturm();
    let mut iv = iv.clone();
    loop {
        let lo_s = q.sign_at(&iv.lo);
        let hi_s = q.sign_at(&iv.hi);
        if lo_s != core::cmp::Ordering::Equal
            && lo_s == hi_s
            && sign_changes(&qseq, &iv.lo) == sign_changes(&qseq, &iv.hi)
        {
            return lo_s;
        }
        let w = (&iv.hi - &iv.lo) / int(2);
        iv = refine(p, &iv, &w);
        if iv.is_exact() {
            return q.sign_at(&iv.lo);
        }
    }
}

/// Exact decision of `∃x ⋀ (p_i rel_i 0)` for univariate rational polynomials.
pub fn exists_univariate(lits: &[(UPoly, Rel)]) -> bool {
    find_witness_point(lits).is_some()
}

/// A sample point satisfying all literals: `Ok(q)` for a rational point,
/// `Err(interval)` for an irrational root isolated by the interval.
pub fn find_witness_point(lits: &[(UPoly, Rel)]) -> Option<Result<BigRational, RootInterval>> {
    let mut prod = UPoly::constant(BigRational::one());
    for (p, _) in lits {
        if !p.is_zero() {
            prod = prod.mul(&p.squarefree());
        }
    }
    let sq = prod.squarefree();
    let roots = sq.isolate_roots();
    let test_rational = |x: &BigRational| lits.iter().all(|(p, r)| r.holds(p.sign_at(x)));
    let mut points: Vec<BigRational> = Vec::new();
    if roots.is_empty() {
        points.push(BigRational::zero());
    } else {
        points.push(&roots[0].lo - BigRational::one());
        points.push(&roots[roots.len() - 1].hi + BigRational::one());
        for w in roots.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let between = if !a.is_exact() {
                a.hi.clone()
            } else if !b.is_exact() {
                b.lo.clone()
            } else {
                (&a.hi + &b.lo) / int(2)
            };
            points.push(between);
        }
    }
    for x in &points {
        if test_rational(x) {
            return Some(Ok(x.clone()));
        }
    }
    for iv in &roots {
        if iv.is_exact() {
            if test_rational(&iv.lo) {
                return Some(Ok(iv.lo.clone()));
            }
            continue;
        }
        if lits.iter().all(|(p, r)| r.holds(sign_at_root(&sq, iv, p))) {
            return Some(Err(iv.clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn isolates_sqrt_two() {
        let p = up(&[-2, 0, 1]);
        let roots = p.isolate_roots();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let fine = refine(&p, r, &ratio(1, 1000));
            let m = fine.midpoint();
            assert!((&m * &m - int(2)).abs() < ratio(1, 100));
        }
    }

    #[test]
    fn exact_rational_roots() {
        // (x - 1)(x - 2)(x + 3)
        let p = up(&[-1, 1]).mul(&up(&[-2, 1])).mul(&up(&[3, 1]));
        let roots = p.isolate_roots();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-3, 1, 2]) {
            assert!(r.lo < int(want) && int(want) < r.hi || r.lo == int(want));
        }
    }

    #[test]
    fn univariate_decisions() {
        // x^2 = 2 and x > 0: true (irrational witness)
        assert!(exists_univariate(&[(up(&[-2, 0, 1]), Rel::Eq), (up(&[0, 1]), Rel::Gt)]));
        // x^2 + 1 = 0: false
        assert!(!exists_univariate(&[(up(&[1, 0, 1]), Rel::Eq)]));
        // x^2 < 0: false; x^2 <= 0: true
        assert!(!exists_univariate(&[(up(&[0, 0, 1]), Rel::Lt)]));
        assert!(exists_univariate(&[(up(&[0, 0, 1]), Rel::Le)]));
        // x^2 = 2 and x^2 - 2x = 0 share no root
        assert!(!exists_univariate(&[(up(&[-2, 0, 1]), Rel::Eq), (up(&[0, -2, 1]), Rel::Eq)]));
        // 1 < x < 2 and x^2 != 2
        assert!(exists_univariate(&[
            (up(&[-1, 1]), Rel::Gt),
            (up(&[2, -1]), Rel::Gt),
            (up(&[-2, 0, 1]), Rel::Ne)
        ]));
    }

    #[test]
    fn sign_at_irrational_root() {
        let p = up(&[-2, 0, 1]).squarefree();
        let roots = p.isolate_roots();
        let pos = roots.iter().find(|r| r.lo >= int(0) || r.hi > int(1)).unwrap();
        // x - 3/2 at sqrt 2 is negative; x^2 - 2 is zero
        assert_eq!(sign_at_root(&p, pos, &up(&[-3, 2])), core::cmp::Ordering::Less);
        assert_eq!(sign_at_root(&p, pos, &up(&[-2, 0, 1])), core::cmp::Ordering::Equal);
    }
}
