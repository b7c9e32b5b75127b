//! Syntactic measures: λ-depth of a variable, λ-depth of division, formula lengths.

use crate::formula::{Atom, Formula};
use crate::term::Term;

/// Nesting depth of `λ` around occurrences of `x`; 0 when `x` is never under `λ`.
pub fn lambda_depth_term(x: &str, t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Const(_) | Term::Pow2(_) => 0,
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
            lambda_depth_term(x, a).max(lambda_depth_term(x, b))
        }
        Term::Lambda(s) => {
            if s.contains_var(x) {
                lambda_depth_term(x, s) + 1
            } else {
                0
            }
        }
    }
}

pub fn lambda_depth(x: &str, f: &Formula) -> usize {
    let mut d = 0;
    f.visit_atoms(&mut |a| {
        for t in a.terms().iter().flatten() {
            d = d.max(lambda_depth_term(x, t));
        }
    });
    d
}

/// Nesting depth of `λ` around division symbols.
pub fn div_lambda_depth_term(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Const(_) | Term::Pow2(_) => 0,
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
            div_lambda_depth_term(a).max(div_lambda_depth_term(b))
        }
        Term::Lambda(s) => {
            if s.has_division() {
                div_lambda_depth_term(s) + 1
            } else {
                0
            }
        }
    }
}

pub fn div_lambda_depth(f: &Formula) -> usize {
    let mut d = 0;
    f.visit_atoms(&mut |a| {
        for t in a.terms().iter().flatten() {
            d = d.max(div_lambda_depth_term(t));
        }
    });
    d
}

/// Number of symbols.
pub fn length_symbols(f: &Formula) -> usize {
    f.size()
}

/// Length in which the symbol `D_n` counts `n`.
pub fn length_dn_weighted(f: &Formula) -> usize {
    let mut extra = 0usize;
    f.visit_atoms(&mut |a| {
        if let Atom::Dn { n, .. } = a {
            extra += (*n as usize).saturating_sub(1);
        }
    });
    f.size() + extra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn lambda_depth_examples() {
        let t = Term::lambda(Term::lambda(x()) + Term::int(1));
        assert_eq!(lambda_depth_term("x", &t), 2);
        assert_eq!(lambda_depth_term("x", &Term::lambda(Term::var("y"))), 0);
        assert_eq!(lambda_depth_term("x", &(x() + Term::lambda(x()))), 1);
    }

    #[test]
    fn div_depth_examples() {
        let q = Term::var("x") / Term::var("y");
        assert_eq!(div_lambda_depth_term(&Term::lambda(q.clone())), 1);
        assert_eq!(div_lambda_depth_term(&Term::lambda(Term::lambda(q.clone()))), 2);
        assert_eq!(div_lambda_depth_term(&q), 0);
    }

    #[test]
    fn weighted_length() {
        let f = Formula::dn(3, x());
        assert_eq!(length_symbols(&f), 2);
        assert_eq!(length_dn_weighted(&f), 4);
    }
}
