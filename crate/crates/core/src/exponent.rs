//! Boolean combinations of `D_n(2^s x)` over a power-of-two `x`, decided by
//! checking one period of exponents.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::rational::lcm_u64;
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentConstraint {
    True,
    False,
    /// `D_n(2^s x)`.
    Atom { n: u32, s: i64 },
    Not(Box<ExponentConstraint>),
    And(Vec<ExponentConstraint>),
    Or(Vec<ExponentConstraint>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaDecision {
    Unsat,
    /// Satisfiable; every interval `[u, 2^period u)` of positive reals contains
    /// a power of two satisfying the constraint.
    Sat { period: u64 },
}

impl ExponentConstraint {
    /// `D_n(2^s x)` with `s` reduced into `[0, n)`.
    pub fn atom(n: u32, s: i64) -> Self {
        assert!(n >= 1);
        ExponentConstraint::Atom { n, s: s.rem_euclid(n as i64) }
    }

    pub fn not(c: ExponentConstraint) -> Self {
        ExponentConstraint::Not(Box::new(c))
    }

    pub fn lcm_modulus(&self) -> u64 {
        match self {
            ExponentConstraint::True | ExponentConstraint::False => 1,
            ExponentConstraint::Atom { n, .. } => *n as u64,
            ExponentConstraint::Not(c) => c.lcm_modulus(),
            ExponentConstraint::And(cs) | ExponentConstraint::Or(cs) => {
                cs.iter().fold(1, |m, c| lcm_u64(m, c.lcm_modulus()))
            }
        }
    }

    /// Truth at `x = 2^j`: `D_n(2^s 2^j)` holds iff `n | s + j`.
    pub fn eval_at_power(&self, j: i64) -> bool {
        match self {
            ExponentConstraint::True => true,
            ExponentConstraint::False => false,
            ExponentConstraint::Atom { n, s } => (s + j).rem_euclid(*n as i64) == 0,
            ExponentConstraint::Not(c) => !c.eval_at_power(j),
            ExponentConstraint::And(cs) => cs.iter().all(|c| c.eval_at_power(j)),
            ExponentConstraint::Or(cs) => cs.iter().any(|c| c.eval_at_power(j)),
        }
    }

    /// Reads a quantifier-free formula whose atoms are all `D_n(2^s x)` or `D_n(x)`.
    pub fn from_formula(f: &Formula, x: &str) -> Result<Self> {
        Ok(match f {
            Formula::True => ExponentConstraint::True,
            Formula::False => ExponentConstraint::False,
            Formula::Atom(Atom::Dn { n, arg }) => {
                let s = shift_of(arg, x).ok_or_else(|| Error::Contract("not an exponent atom".into()))?;
                ExponentConstraint::atom(*n, s)
            }
            Formula::Atom(_) => return Err(Error::Contract("not an exponent atom".into())),
            Formula::Not(a) => ExponentConstraint::not(Self::from_formula(a, x)?),
            Formula::And(..) => {
                ExponentConstraint::And(f.conjuncts().into_iter().map(|c| Self::from_formula(c, x)).collect::<Result<_>>()?)
            }
            Formula::Or(..) => {
                ExponentConstraint::Or(f.disjuncts().into_iter().map(|c| Self::from_formula(c, x)).collect::<Result<_>>()?)
            }
            Formula::Exists(..) | Formula::Forall(..) => {
                return Err(Error::Contract("exponent constraints are quantifier-free".into()))
            }
        })
    }

    pub fn to_formula(&self, x: &str) -> Formula {
        match self {
            ExponentConstraint::True => Formula::True,
            ExponentConstraint::False => Formula::False,
            ExponentConstraint::Atom { n, s } => Formula::dn(*n, Term::shifted(*s, Term::var(x))),
            ExponentConstraint::Not(c) => Formula::not(c.to_formula(x)),
            ExponentConstraint::And(cs) => Formula::conj(cs.iter().map(|c| c.to_formula(x)).collect()),
            ExponentConstraint::Or(cs) => Formula::disj(cs.iter().map(|c| c.to_formula(x)).collect()),
        }
    }
}

/// `s` when `t` is `2^s · x` or `x`.
fn shift_of(t: &Term, x: &str) -> Option<i64> {
    match t {
        Term::Var(v) if &**v == x => Some(0),
        Term::Mul(a, b) => match (&**a, &**b) {
            (Term::Pow2(s), Term::Var(v)) if &**v == x => Some(*s),
            _ => None,
        },
        _ => None,
    }
}

pub fn lcm_modulus(theta: &ExponentConstraint) -> u64 {
    theta.lcm_modulus()
}

pub fn eval_theta_at_power(theta: &ExponentConstraint, j: i64) -> bool {
    theta.eval_at_power(j)
}

/// Satisfiable over powers of two iff some `j` in `[0, M)` works, `M` the lcm of the moduli.
pub fn decide_exists_theta(theta: &ExponentConstraint) -> ThetaDecision {
    let m = theta.lcm_modulus();
    if (0..m as i64).any(|j| theta.eval_at_power(j)) {
        ThetaDecision::Sat { period: m }
    } else {
        ThetaDecision::Unsat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_qf, Assignment};
    use crate::rational::pow2;
    use crate::term::Name;
    use alloc::vec;

    use ExponentConstraint as E;

    #[test]
    fn lcm_examples() {
        let t = E::And(vec![E::atom(2, 0), E::atom(3, 1)]);
        assert_eq!(t.lcm_modulus(), 6);
        assert_eq!(E::atom(4, 0).lcm_modulus(), 4);
        assert_eq!(E::True.lcm_modulus(), 1);
    }

    #[test]
    fn decide_examples() {
        let t = E::And(vec![E::atom(2, 0), E::not(E::atom(4, 0))]);
        assert_eq!(decide_exists_theta(&t), ThetaDecision::Sat { period: 4 });
        let t = E::And(vec![E::atom(2, 0), E::not(E::atom(2, 0))]);
        assert_eq!(decide_exists_theta(&t), ThetaDecision::Unsat);
        assert_eq!(decide_exists_theta(&E::atom(1, 0)), ThetaDecision::Sat { period: 1 });
    }

    #[test]
    fn eval_examples() {
        assert!(E::atom(3, 1).eval_at_power(2));
        assert!(E::atom(2, 0).eval_at_power(0));
        assert!(E::not(E::atom(2, 0)).eval_at_power(1));
    }

    #[test]
    fn agrees_with_evaluator() {
        let t = E::Or(vec![E::And(vec![E::atom(3, 2), E::not(E::atom(2, 1))]), E::atom(5, 4)]);
        let f = t.to_formula("x");
        assert_eq!(E::from_formula(&f, "x").unwrap(), t);
        for j in -30..30 {
            let env: Assignment = [(Name::from("x"), pow2(j))].into_iter().collect();
            assert_eq!(eval_qf(&f, &env).unwrap(), t.eval_at_power(j));
            assert_eq!(t.eval_at_power(j), t.eval_at_power(j + t.lcm_modulus() as i64));
        }
    }
}
