//! A term viewed as a polynomial in one variable `x` with `x`-free coefficient terms.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::term::{Name, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyInX {
    pub var: Name,
    /// `coeffs[i]` multiplies `x^i`; none of them contains `x`.
    pub coeffs: Vec<Term>,
}

impl PolyInX {
    /// Reads `t` as `Σ s_i x^i`. Fails when `x` occurs under `λ` or in a divisor.
    pub fn from_term(t: &Term, x: &str) -> Result<PolyInX> {
        let coeffs = coeffs_of(t, x).ok_or_else(|| Error::NotPolynomial { var: x.to_string(), term: t.to_string() })?;
        let mut p = PolyInX { var: Name::from(x), coeffs };
        p.trim();
        Ok(p)
    }

    pub fn is_polynomial(t: &Term, x: &str) -> bool {
        coeffs_of(t, x).is_some()
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Term::zero());
        }
    }

    /// Formal degree (literal-zero leading coefficients are trimmed).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn x(&self) -> Term {
        Term::Var(self.var.clone())
    }

    /// `s · x^i` with unit factors omitted.
    pub fn monomial(s: Term, x: &Term, i: usize) -> Term {
        Term::times(s, Term::power(x, i as u32))
    }

    /// `Σ s_i x^i`, skipping literal-zero coefficients.
    pub fn to_term(&self) -> Term {
        let x = self.x();
        let mut acc: Option<Term> = None;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let m = PolyInX::monomial(c.clone(), &x, i);
            acc = Some(match acc {
                None => m,
                Some(a) => Term::add(a, m),
            });
        }
        acc.unwrap_or_else(Term::zero)
    }

    /// Rewrites with `x^e = v`, giving a polynomial of degree below `e`.
    pub fn reduce_power(&self, e: usize, v: &Term) -> PolyInX {
        assert!(e >= 1);
        let mut out = vec![Term::zero(); e.min(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = (k / e) as u32;
            let term = Term::times(c.clone(), Term::power(v, q));
            let slot = &mut out[k % e];
            *slot = Term::plus(slot.clone(), term);
        }
        let mut p = PolyInX { var: self.var.clone(), coeffs: out };
        p.trim();
        p
    }

    /// Applies a term rewrite to each coefficient.
    pub fn map_coeffs(&self, f: &mut dyn FnMut(&Term) -> Term) -> PolyInX {
        let mut p = PolyInX { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| f(c)).collect() };
        p.trim();
        p
    }
}

fn coeffs_of(t: &Term, x: &str) -> Option<Vec<Term>> {
    if !t.contains_var(x) {
        return Some(vec![t.clone()]);
    }
    Some(match t {
        Term::Var(_) => vec![Term::zero(), Term::one()],
        Term::Add(a, b) => zip_with(coeffs_of(a, x)?, coeffs_of(b, x)?, Term::plus),
        Term::Sub(a, b) => zip_with(coeffs_of(a, x)?, coeffs_of(b, x)?, Term::minus),
        Term::Mul(a, b) => {
            let (p, q) = (coeffs_of(a, x)?, coeffs_of(b, x)?);
            let mut out = vec![Term::zero(); p.len() + q.len() - 1];
            for (i, s) in p.iter().enumerate() {
                for (j, u) in q.iter().enumerate() {
                    let prod = Term::times(s.clone(), u.clone());
                    out[i + j] = Term::plus(out[i + j].clone(), prod);
                }
            }
            out
        }
        Term::Div(a, b) if !b.contains_var(x) => coeffs_of(a, x)?
            .into_iter()
            .map(|c| if c.is_zero() { c } else { Term::div(c, (**b).clone()) })
            .collect(),
        _ => return None,
    })
}

fn zip_with(p: Vec<Term>, q: Vec<Term>, f: fn(Term, Term) -> Term) -> Vec<Term> {
    let n = p.len().max(q.len());
    (0..n)
        .map(|i| {
            let a = p.get(i).cloned().unwrap_or_else(Term::zero);
            let b = q.get(i).cloned().unwrap_or_else(Term::zero);
            f(a, b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_term, Assignment};
    use crate::rational::int;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn coefficients_of_product() {
        // (y x + 1)(x - y) = y x^2 + (1 - y^2) x - y
        let t = (y() * x() + Term::int(1)) * (x() - y());
        let p = PolyInX::from_term(&t, "x").unwrap();
        assert_eq!(p.degree(), 2);
        let env: Assignment = [(Name::from("y"), int(3))].into_iter().collect();
        let vals: Vec<_> = p.coeffs.iter().map(|c| eval_term(c, &env).unwrap()).collect();
        assert_eq!(vals, vec![int(-3), int(-8), int(3)]);
    }

    #[test]
    fn rejects_x_under_lambda_or_divisor() {
        assert!(PolyInX::from_term(&Term::lambda(x()), "x").is_err());
        assert!(PolyInX::from_term(&(Term::int(1) / x()), "x").is_err());
        assert!(PolyInX::from_term(&(x() / y()), "x").is_ok());
    }

    #[test]
    fn reduce_power_preserves_value() {
        // x^3 + 2x^2 + x + 5 with x^2 = v
        let t = x() * x() * x() + Term::int(2) * x() * x() + x() + Term::int(5);
        let p = PolyInX::from_term(&t, "x").unwrap();
        let v = Term::var("v");
        let r = p.reduce_power(2, &v);
        assert!(r.degree() < 2);
        let env: Assignment = [(Name::from("x"), int(3)), (Name::from("v"), int(9))].into_iter().collect();
        assert_eq!(eval_term(&r.to_term(), &env).unwrap(), eval_term(&t, &env).unwrap());
    }
}
