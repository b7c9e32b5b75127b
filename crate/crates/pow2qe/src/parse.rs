//! Text syntax. Accepts everything the core printer emits plus the sugar
//! `<=`, `>=`, `>`, `!=`, `->` and `<->`.
//!
//! ```text
//! formula := quant | iff
//! quant   := ("exists" | "forall") name "." formula
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("or" and)*
//! and     := not ("and" not)*
//! not     := "not" not | primary
//! primary := "true" | "false" | quant | "A(" term ")" | "D[" int "](" term ")"
//!          | term rel term | "(" formula ")"
//! term    := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary)*
//! unary   := "-" unary | atom ("^" nat)?
//! atom    := int | int "/" int | "2^" int | name | "L(" term ")" | "(" term ")"
//! ```
//!
//! A rational literal `p/q` is written without spaces; `p / q` is a quotient.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use pow2qe_core::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

const KEYWORDS: &[&str] = &["exists", "forall", "and", "or", "not", "true", "false"];

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

#[derive(Clone, Copy)]
enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

pub fn parse_formula(src: &str) -> PResult<Formula> {
    let mut p = Parser { src, pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

pub fn parse_term(src: &str) -> PResult<Term> {
    let mut p = Parser { src, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

impl<'s> Parser<'s> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, message: msg.into() }
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Consumes a punctuation token.
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    /// The identifier at the cursor, without consuming it.
    fn peek_ident(&mut self) -> Option<&'s str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')).map_or(rest.len(), |(i, _)| i);
        Some(&rest[..end])
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_ident() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> PResult<&'s str> {
        match self.peek_ident() {
            Some(id) if !KEYWORDS.contains(&id) => {
                self.pos += id.len();
                Ok(id)
            }
            Some(id) => Err(self.error(format!("`{id}` is a keyword"))),
            None => Err(self.error("expected a variable name")),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        self.iff()
    }

    fn quantifier(&mut self) -> PResult<Option<Formula>> {
        let exists = if self.eat_keyword("exists") {
            true
        } else if self.eat_keyword("forall") {
            false
        } else {
            return Ok(None);
        };
        let x = self.name()?;
        self.expect(".")?;
        let body = self.formula()?;
        Ok(Some(if exists { Formula::exists(x, body) } else { Formula::forall(x, body) }))
    }

    fn iff(&mut self) -> PResult<Formula> {
        let mut f = self.imp()?;
        while self.eat("<->") {
            f = Formula::iff(f, self.imp()?);
        }
        Ok(f)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let f = self.or()?;
        if self.eat("->") {
            return Ok(Formula::implies(f, self.imp()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut f = self.and()?;
        while self.eat_keyword("or") {
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut f = self.not()?;
        while self.eat_keyword("and") {
            f = Formula::and(f, self.not()?);
        }
        Ok(f)
    }

    fn not(&mut self) -> PResult<Formula> {
        if self.eat_keyword("not") {
            return Ok(Formula::not(self.not()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Formula> {
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        if self.eat_keyword("true") {
            return Ok(Formula::True);
        }
        if self.eat_keyword("false") {
            return Ok(Formula::False);
        }
        self.skip_ws();
        if self.rest().starts_with("A(") {
            self.pos += 2;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Formula::power(t));
        }
        if self.rest().starts_with("D[") {
            self.pos += 2;
            self.skip_ws();
            let at = self.pos;
            let n = self.digits().ok_or_else(|| self.error("expected a D index"))?;
            let n: u32 = n.parse().map_err(|_| ParseError { pos: at, message: "D index out of range".into() })?;
            if n < 1 {
                return Err(ParseError { pos: at, message: "D index must be at least 1".into() });
            }
            self.expect("]")?;
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Formula::dn(n, t));
        }
        // A parenthesis opens either a term or a formula; try the comparison first.
        let start = self.pos;
        match self.comparison() {
            Ok(f) => Ok(f),
            Err(e) => {
                let after_term = self.pos;
                self.pos = start;
                if self.eat("(") {
                    let f = self.formula()?;
                    self.expect(")")?;
                    Ok(f)
                } else {
                    self.pos = after_term;
                    Err(e)
                }
            }
        }
    }

    fn comparison(&mut self) -> PResult<Formula> {
        let l = self.term()?;
        let rel = self.rel().ok_or_else(|| self.error("expected a comparison"))?;
        let r = self.term()?;
        Ok(match rel {
            Rel::Eq => Formula::eq(l, r),
            Rel::Ne => Formula::not(Formula::eq(l, r)),
            Rel::Lt => Formula::lt(l, r),
            Rel::Le => Formula::not(Formula::lt(r, l)),
            Rel::Gt => Formula::lt(r, l),
            Rel::Ge => Formula::not(Formula::lt(l, r)),
        })
    }

    fn rel(&mut self) -> Option<Rel> {
        self.skip_ws();
        let rest = self.rest();
        // `<->` and `->` are connectives, not comparisons.
        if rest.starts_with("<->") {
            return None;
        }
        for (tok, rel) in [("<=", Rel::Le), (">=", Rel::Ge), ("!=", Rel::Ne), ("=", Rel::Eq), ("<", Rel::Lt), (">", Rel::Gt)] {
            if rest.starts_with(tok) {
                self.pos += tok.len();
                return Some(rel);
            }
        }
        None
    }

    fn term(&mut self) -> PResult<Term> {
        let mut t = self.product()?;
        loop {
            self.skip_ws();
            // `->` must not be read as a minus.
            if self.rest().starts_with("->") {
                break;
            }
            if self.eat("+") {
                t = Term::add(t, self.product()?);
            } else if self.eat("-") {
                t = Term::sub(t, self.product()?);
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut t = self.unary()?;
        loop {
            if self.eat("*") {
                t = Term::mul(t, self.unary()?);
            } else if self.eat("/") {
                t = Term::div(t, self.unary()?);
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn unary(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.rest().starts_with('-') && !self.rest().starts_with("->") {
            self.pos += 1;
            return Ok(Term::neg(self.unary()?));
        }
        let t = self.atom()?;
        self.skip_ws();
        if !self.eat("^") {
            return Ok(t);
        }
        self.skip_ws();
        let at = self.pos;
        let k = self.digits().ok_or_else(|| self.error("expected a natural exponent"))?;
        match k.parse::<u32>() {
            Ok(k) if k <= 64 => Ok(Term::power(&t, k)),
            _ => Err(ParseError { pos: at, message: "exponent out of range".into() }),
        }
    }

    fn digits(&mut self) -> Option<&'s str> {
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    fn atom(&mut self) -> PResult<Term> {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with("L(") {
            self.pos += 2;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Term::lambda(t));
        }
        if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(t);
        }
        if let Some(num) = self.digits() {
            if num == "2" && self.eat("^") {
                self.skip_ws();
                let neg = self.rest().starts_with('-');
                if neg {
                    self.pos += 1;
                }
                let at = self.pos;
                let k = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
                let k: i64 = k.parse().map_err(|_| ParseError { pos: at, message: "exponent out of range".into() })?;
                return Ok(Term::pow2(if neg { -k } else { k }));
            }
            let n: BigInt = num.parse().expect("digits");
            let save = self.pos;
            if self.rest().starts_with('/') {
                self.pos += 1;
                if let Some(d) = self.digits() {
                    let d: BigInt = d.parse().expect("digits");
                    if d == BigInt::from(0) {
                        return Err(self.error("zero denominator in a rational literal"));
                    }
                    return Ok(Term::constant(BigRational::new(n, d)));
                }
                self.pos = save;
            }
            return Ok(Term::constant(BigRational::from_integer(n)));
        }
        match self.peek_ident() {
            Some(id) if !KEYWORDS.contains(&id) => {
                self.pos += id.len();
                Ok(Term::var(id))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) {
        let f = parse_formula(s).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), f, "{s} printed as {printed}");
    }

    #[test]
    fn examples() {
        let f = parse_formula("exists x. A(x) and 3 < x and x < 5").unwrap();
        assert_eq!(f.to_string(), "exists x. A(x) and 3 < x and x < 5");
        let f = parse_formula("D[3](L(y)/2)").unwrap();
        assert_eq!(f, Formula::dn(3, Term::div(Term::lambda(Term::var("y")), Term::int(2))));
        let f = parse_formula("forall x. x*x >= 0").unwrap();
        let xx = Term::mul(Term::var("x"), Term::var("x"));
        assert_eq!(f, Formula::forall("x", Formula::not(Formula::lt(xx, Term::zero()))));
    }

    #[test]
    fn literals() {
        assert_eq!(parse_term("2/3").unwrap(), Term::rat(2, 3));
        assert_eq!(parse_term("2 / 3").unwrap(), Term::div(Term::int(2), Term::int(3)));
        assert_eq!(parse_term("-1/2").unwrap(), Term::rat(-1, 2));
        assert_eq!(parse_term("2^-3").unwrap(), Term::pow2(-3));
        assert_eq!(parse_term("2^3/4").unwrap(), Term::div(Term::pow2(3), Term::int(4)));
        assert_eq!(parse_term("x*-3").unwrap(), Term::mul(Term::var("x"), Term::int(-3)));
        assert_eq!(parse_term("x^3").unwrap(), Term::power(&Term::var("x"), 3));
        assert_eq!(parse_term("(x + 1)^0").unwrap(), Term::one());
    }

    #[test]
    fn sugar_and_connectives() {
        let f = parse_formula("x > 1 -> y != 2 <-> not x <= 0").unwrap();
        assert!(f.is_quantifier_free());
        assert!(parse_formula("(x + 1) * 2 < 3 and (y < 1 or y > 2)").is_ok());
        assert!(parse_formula("x->y").is_err());
        assert!(parse_formula("D[0](x)").is_err());
        let e = parse_formula("x < ").unwrap_err();
        assert_eq!(e.pos, 4);
    }

    #[test]
    fn round_trips() {
        for s in [
            "exists x. A(x) and x*x = 2",
            "forall x. x > 0 -> exists y. A(y) and y <= x and x < 2*y",
            "a - -3 < x/2/(3) or x/2/3 = 2^3/4",
            "not (exists x. x < y) and D[2](2*L(L(x) + 1))",
            "(exists x. x = 1) or y = 1",
            "0 - x*(y + 1) = L(x - 1/3)",
        ] {
            rt(s);
        }
    }
}
