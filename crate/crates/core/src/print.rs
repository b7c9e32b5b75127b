//! Concrete syntax printer. The output is accepted by the parser in the `pow2qe`
//! crate and parses back to a structurally identical value.
//!
//! Term precedence, loosest first: `+ -`, `* /`, unary minus, primaries.
//! Formula precedence: `or`, `and`, `not`; a quantifier body extends as far
//! right as possible, so a quantifier is parenthesized unless it ends its context.

use core::fmt::{self, Display, Formatter, Write};

use num_traits::Signed;

use crate::formula::{Atom, Formula};
use crate::term::Term;

const SUM: u8 = 0;
const PRODUCT: u8 = 1;
const UNARY: u8 = 2;

fn level_of(t: &Term) -> u8 {
    match t {
        Term::Add(..) | Term::Sub(..) => SUM,
        Term::Mul(..) | Term::Div(..) => PRODUCT,
        Term::Const(c) if c.is_negative() => UNARY,
        _ => 3,
    }
}

fn needs_paren(t: &Term, ctx: u8) -> bool {
    level_of(t) < ctx
}

/// Whether the printed form ends in an integer token that the parser could fuse
/// with a following `/INT` into a rational literal.
fn ends_with_bare_int(t: &Term, ctx: u8) -> bool {
    if needs_paren(t, ctx) {
        return false;
    }
    match t {
        Term::Const(c) => c.is_integer(),
        Term::Add(_, b) | Term::Sub(_, b) => ends_with_bare_int(b, PRODUCT),
        Term::Mul(_, b) => ends_with_bare_int(b, UNARY),
        Term::Div(a, b) => !divisor_needs_paren(a, b) && ends_with_bare_int(b, UNARY),
        _ => false,
    }
}

fn starts_with_int(t: &Term, ctx: u8) -> bool {
    if needs_paren(t, ctx) {
        return false;
    }
    match t {
        Term::Const(c) => !c.is_negative(),
        Term::Pow2(_) => true,
        _ => false,
    }
}

fn divisor_needs_paren(a: &Term, b: &Term) -> bool {
    ends_with_bare_int(a, PRODUCT) && starts_with_int(b, UNARY)
}

fn write_term(t: &Term, ctx: u8, f: &mut Formatter<'_>) -> fmt::Result {
    if needs_paren(t, ctx) {
        f.write_char('(')?;
        write_term(t, SUM, f)?;
        return f.write_char(')');
    }
    match t {
        Term::Var(v) => f.write_str(v),
        Term::Const(c) => {
            if c.is_integer() {
                write!(f, "{}", c.numer())
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())
            }
        }
        Term::Pow2(k) => write!(f, "2^{k}"),
        Term::Add(a, b) => {
            write_term(a, SUM, f)?;
            f.write_str(" + ")?;
            write_term(b, PRODUCT, f)
        }
        Term::Sub(a, b) => {
            write_term(a, SUM, f)?;
            f.write_str(" - ")?;
            write_term(b, PRODUCT, f)
        }
        Term::Mul(a, b) => {
            write_term(a, PRODUCT, f)?;
            f.write_char('*')?;
            write_term(b, UNARY, f)
        }
        Term::Div(a, b) => {
            write_term(a, PRODUCT, f)?;
            f.write_char('/')?;
            if divisor_needs_paren(a, b) {
                f.write_char('(')?;
                write_term(b, SUM, f)?;
                f.write_char(')')
            } else {
                write_term(b, UNARY, f)
            }
        }
        Term::Lambda(a) => {
            f.write_str("L(")?;
            write_term(a, SUM, f)?;
            f.write_char(')')
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_term(self, SUM, f)
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Lt(a, b) => write!(f, "{a} < {b}"),
            Atom::Dn { n: 1, arg } => write!(f, "A({arg})"),
            Atom::Dn { n, arg } => write!(f, "D[{n}]({arg})"),
        }
    }
}

const OR: u8 = 0;
const AND: u8 = 1;
const NOT: u8 = 2;

fn write_formula(g: &Formula, ctx: u8, tail: bool, f: &mut Formatter<'_>) -> fmt::Result {
    let level = match g {
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => NOT,
    };
    let quant = matches!(g, Formula::Exists(..) | Formula::Forall(..));
    if level < ctx || (quant && !tail) {
        f.write_char('(')?;
        write_formula(g, OR, true, f)?;
        return f.write_char(')');
    }
    match g {
        Formula::True => f.write_str("true"),
        Formula::False => f.write_str("false"),
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Not(a) => {
            f.write_str("not ")?;
            write_formula(a, NOT, tail, f)
        }
        Formula::And(a, b) => {
            write_formula(a, AND, false, f)?;
            f.write_str(" and ")?;
            write_formula(b, NOT, tail, f)
        }
        Formula::Or(a, b) => {
            write_formula(a, OR, false, f)?;
            f.write_str(" or ")?;
            write_formula(b, AND, tail, f)
        }
        Formula::Exists(x, a) => {
            write!(f, "exists {x}. ")?;
            write_formula(a, OR, true, f)
        }
        Formula::Forall(x, a) => {
            write!(f, "forall {x}. ")?;
            write_formula(a, OR, true, f)
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(self, OR, true, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn dn_and_power_literals() {
        let f = Formula::dn(2, Term::int(2) * x());
        assert_eq!(f.to_string(), "D[2](2*x)");
        assert_eq!(Term::Pow2(3).to_string(), "2^3");
        assert_eq!(Term::Pow2(-3).to_string(), "2^-3");
        assert_eq!(Term::lambda(x()).to_string(), "L(x)");
        assert_eq!(Formula::power(x()).to_string(), "A(x)");
    }

    #[test]
    fn precedence_and_parens() {
        let t = (x() + Term::int(1)) * (x() - Term::int(2));
        assert_eq!(t.to_string(), "(x + 1)*(x - 2)");
        let t = x() - (x() - Term::int(1));
        assert_eq!(t.to_string(), "x - (x - 1)");
        assert_eq!(Term::rat(-3, 4).to_string(), "-3/4");
        assert_eq!(Term::div(Term::int(-3), Term::int(4)).to_string(), "-3/(4)");
        assert_eq!(Term::div(Term::int(3), Term::Pow2(2)).to_string(), "3/(2^2)");
        assert_eq!(Term::div(x(), Term::rat(3, 4)).to_string(), "x/3/4");
    }

    #[test]
    fn quantifier_parenthesization() {
        let q = Formula::exists("y", Formula::power(Term::var("y")));
        let f = Formula::or(q.clone(), Formula::True);
        assert_eq!(f.to_string(), "(exists y. A(y)) or true");
        let f = Formula::and(Formula::True, q.clone());
        assert_eq!(f.to_string(), "true and exists y. A(y)");
        let f = Formula::not(q);
        assert_eq!(f.to_string(), "not exists y. A(y)");
    }
}
