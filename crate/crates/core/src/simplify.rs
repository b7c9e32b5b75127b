//! Sound simplification.
//!
//! Arithmetic atoms are brought to a canonical polynomial form over "leaves"
//! (variables, `λ`-terms and quotients with non-constant divisors). Ground
//! subterms are folded exactly. A few `λ` identities are used:
//! `λ(λ(t)) = λ(t)`, `λ(2^k t) = 2^k λ(t)`, `λ(t) >= 0`, `λ(t) > 0 ⟺ t > 0`.
//! Connectives are flattened, deduplicated and checked for complementary pairs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eval::{eval_term, Assignment};
use crate::formula::{Atom, Formula, Literal};
use crate::mpoly::Poly;
use crate::rational::{self, power_exponent};
use crate::term::{Name, Term};

/// Simplifies a formula. Idempotent and equivalence-preserving.
pub fn simplify(f: &Formula) -> Formula {
    let g = Simplifier::new().formula(f);
    Simplifier::new().formula(&simplify_in_context(&g))
}

/// Simplifies under the standing assumption that every variable in `powers`
/// denotes a power of two.
pub fn simplify_with_powers(f: &Formula, powers: &BTreeSet<Name>) -> Formula {
    let mut s = Simplifier::new();
    s.powers = powers.clone();
    s.formula(f)
}

/// Full simplification, contextual pass included, under the assumption that
/// every variable in `powers` denotes a power of two.
pub fn simplify_powers(f: &Formula, powers: &BTreeSet<Name>) -> Formula {
    let g = simplify_with_powers(f, powers);
    let mut s = Simplifier::new();
    s.powers = powers.clone();
    let mut cx = Context { simp: s, leaves: BTreeMap::new() };
    let h = cx.walk(&g, &Facts::default());
    simplify_with_powers(&h, powers)
}

/// Canonical form of a term.
pub fn simplify_term(t: &Term) -> Term {
    Simplifier::new().term(t)
}

/// Simplifies only the atoms of a formula, leaving its propositional shape intact.
pub fn simplify_atoms(f: &Formula) -> Formula {
    let mut s = Simplifier::new();
    f.map_atoms(&mut |a| s.atom(a))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SignInfo {
    Pos,
    Neg,
    NonNeg,
    NonPos,
    Unknown,
}

#[derive(Default)]
pub struct Simplifier {
    powers: BTreeSet<Name>,
    terms: BTreeMap<Term, Term>,
    atoms: BTreeMap<Atom, Formula>,
}

impl Simplifier {
    pub fn new() -> Simplifier {
        Simplifier::default()
    }

    // ---------- terms ----------

    pub fn term(&mut self, t: &Term) -> Term {
        if let Some(r) = self.terms.get(t) {
            return r.clone();
        }
        let r = self.term_uncached(t);
        self.terms.insert(t.clone(), r.clone());
        r
    }

    fn term_uncached(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => return t.clone(),
            _ => {}
        }
        if t.is_ground() {
            let v = eval_term(t, &Assignment::new()).expect("ground term evaluates");
            return Term::Const(v);
        }
        let (p, leaves) = self.poly(t);
        to_term(&p, &leaves)
    }

    fn lambda(&mut self, s: &Term) -> Term {
        let s = self.term(s);
        if let Some(c) = s.as_const() {
            return Term::Const(rational::lambda(&c));
        }
        if self.pow_valued(&s) {
            return s;
        }
        let (p, leaves) = self.poly(&s);
        match self.sign(&p, &leaves) {
            SignInfo::Neg | SignInfo::NonPos => return Term::zero(),
            _ => {}
        }
        // λ(c · m) = c · λ(m) for a power-of-two constant c.
        let monos = p.monomial_list();
        if monos.len() == 1 {
            let (c, m) = &monos[0];
            if power_exponent(c).is_some() && !c.is_one() {
                let inner = to_term(&mono_poly(m), &leaves);
                let l = self.lambda(&inner);
                return self.term(&Term::mul(Term::Const(c.clone()), l));
            }
        }
        Term::lambda(s)
    }

    /// Whether the term's value is always 0 or a power of two.
    fn pow_valued(&self, t: &Term) -> bool {
        match t {
            Term::Lambda(_) | Term::Pow2(_) => true,
            Term::Const(c) => c.is_zero() || power_exponent(c).is_some(),
            Term::Var(v) => self.powers.contains(v),
            Term::Mul(a, b) | Term::Div(a, b) => self.pow_valued(a) && self.pow_valued(b),
            _ => false,
        }
    }

    /// Reads a term as a polynomial over canonical leaves (sorted for determinism).
    fn poly(&mut self, t: &Term) -> (Poly, Vec<Term>) {
        // One pass with first-seen numbering, then renumber in sorted order.
        let mut seen: BTreeMap<Term, u32> = BTreeMap::new();
        let p = self.to_poly(t, &mut |leaf: Term| {
            let next = seen.len() as u32;
            *seen.entry(leaf).or_insert(next)
        });
        let mut rank = vec![0u32; seen.len()];
        for (r, idx) in seen.values().enumerate() {
            rank[*idx as usize] = r as u32;
        }
        if rank.iter().enumerate().all(|(i, r)| i as u32 == *r) {
            return (p, seen.into_keys().collect());
        }
        let renamed = p.monomial_list().into_iter().fold(Poly::zero(), |acc, (c, m)| {
            let m: Vec<(u32, usize)> = m.iter().map(|(v, e)| (rank[*v as usize], *e)).collect();
            acc.add(&mono_poly(&m).scale(&c))
        });
        (renamed, seen.into_keys().collect())
    }

    fn to_poly(&mut self, t: &Term, leaf: &mut dyn FnMut(Term) -> u32) -> Poly {
        match t {
            Term::Const(c) => Poly::Const(c.clone()),
            Term::Pow2(k) => Poly::Const(rational::pow2(*k)),
            Term::Var(_) => Poly::var(leaf(t.clone())),
            Term::Add(a, b) => {
                let pa = self.to_poly(a, leaf);
                pa.add(&self.to_poly(b, leaf))
            }
            Term::Sub(a, b) => {
                let pa = self.to_poly(a, leaf);
                pa.sub(&self.to_poly(b, leaf))
            }
            Term::Mul(a, b) => {
                let pa = self.to_poly(a, leaf);
                if pa.is_zero() {
                    return pa;
                }
                pa.mul(&self.to_poly(b, leaf))
            }
            Term::Div(a, b) => {
                let d = self.term(b);
                if let Some(c) = d.as_const() {
                    if c.is_zero() {
                        return Poly::zero();
                    }
                    return self.to_poly(a, leaf).scale(&c.recip());
                }
                let n = self.term(a);
                if let Some(c) = n.as_const() {
                    if c.is_zero() {
                        return Poly::zero();
                    }
                }
                // (c · m) / d with constant c: pull c out of the quotient.
                let (np, nl) = self.poly(&n);
                let monos = np.monomial_list();
                if monos.len() == 1 && !monos[0].0.is_one() {
                    let (c, m) = &monos[0];
                    let q = Term::div(to_term(&mono_poly(m), &nl), d);
                    return Poly::var(leaf(q)).scale(c);
                }
                Poly::var(leaf(Term::div(n, d)))
            }
            Term::Lambda(s) => {
                let r = self.lambda(s);
                match &r {
                    Term::Lambda(_) => Poly::var(leaf(r)),
                    _ => self.to_poly(&r, leaf),
                }
            }
        }
    }

    fn leaf_sign(&self, leaf: &Term) -> SignInfo {
        match leaf {
            Term::Var(v) if self.powers.contains(v) => SignInfo::Pos,
            Term::Lambda(_) => SignInfo::NonNeg,
            Term::Div(a, b) if self.pow_valued(a) && self.pow_valued(b) => SignInfo::NonNeg,
            _ => SignInfo::Unknown,
        }
    }

    fn sign(&self, p: &Poly, leaves: &[Term]) -> SignInfo {
        if let Some(c) = p.as_const() {
            return if c.is_positive() {
                SignInfo::Pos
            } else if c.is_negative() {
                SignInfo::Neg
            } else {
                SignInfo::NonNeg
            };
        }
        let mut all_nonneg = true;
        let mut all_nonpos = true;
        let mut strict = false;
        for (c, m) in p.monomial_list() {
            let mut factor_strict = true;
            for (v, e) in &m {
                let s = self.leaf_sign(&leaves[*v as usize]);
                if e % 2 == 0 {
                    factor_strict &= s == SignInfo::Pos;
                    continue;
                }
                match s {
                    SignInfo::Pos => {}
                    SignInfo::NonNeg => factor_strict = false,
                    _ => return SignInfo::Unknown,
                }
            }
            if c.is_positive() {
                all_nonpos = false;
            } else {
                all_nonneg = false;
            }
            if m.is_empty() || factor_strict {
                strict = true;
            }
        }
        match (all_nonneg, all_nonpos, strict) {
            (true, _, true) => SignInfo::Pos,
            (true, _, false) => SignInfo::NonNeg,
            (_, true, true) => SignInfo::Neg,
            (_, true, false) => SignInfo::NonPos,
            _ => SignInfo::Unknown,
        }
    }

    /// For a single monomial over pow-valued leaves, the conditions `0 < s_i`
    /// equivalent to the monomial being nonzero; `None` otherwise.
    fn nonzero_conditions(&mut self, m: &[(u32, usize)], leaves: &[Term]) -> Option<Vec<Formula>> {
        let mut out = Vec::new();
        for (v, _) in m {
            match &leaves[*v as usize] {
                Term::Lambda(s) => out.push(self.atom(&Atom::Lt(Term::zero(), (**s).clone()))),
                Term::Var(x) if self.powers.contains(x) => {}
                _ => return None,
            }
        }
        Some(out)
    }

    // ---------- atoms ----------

    pub fn atom(&mut self, a: &Atom) -> Formula {
        if let Some(r) = self.atoms.get(a) {
            return r.clone();
        }
        let r = self.atom_uncached(a);
        self.atoms.insert(a.clone(), r.clone());
        r
    }

    fn atom_uncached(&mut self, a: &Atom) -> Formula {
        match a {
            Atom::Eq(l, r) => {
                let (p, leaves) = self.poly(&Term::sub(l.clone(), r.clone()));
                if let Some(c) = p.as_const() {
                    return bool_formula(c.is_zero());
                }
                if matches!(self.sign(&p, &leaves), SignInfo::Pos | SignInfo::Neg) {
                    return Formula::False;
                }
                let monos = p.monomial_list();
                if monos.len() == 1 {
                    if let Some(conds) = self.nonzero_conditions(&monos[0].1, &leaves) {
                        return Formula::negate(conj_sorted(conds));
                    }
                }
                let (q, _) = p.primitive();
                Formula::eq(to_term(&q, &leaves), Term::zero())
            }
            Atom::Lt(l, r) => {
                let (p, leaves) = self.poly(&Term::sub(r.clone(), l.clone()));
                if let Some(c) = p.as_const() {
                    return bool_formula(c.is_positive());
                }
                match self.sign(&p, &leaves) {
                    SignInfo::Pos => return Formula::True,
                    SignInfo::Neg | SignInfo::NonPos => return Formula::False,
                    _ => {}
                }
                let monos = p.monomial_list();
                if monos.len() == 1 && monos[0].0.is_positive() {
                    if let Some(conds) = self.nonzero_conditions(&monos[0].1, &leaves) {
                        return conj_sorted(conds);
                    }
                }
                let q = p.scale(&p.content().recip());
                Formula::lt(Term::zero(), to_term(&q, &leaves))
            }
            Atom::Dn { n, arg } => {
                let (p, leaves) = self.poly(arg);
                if let Some(c) = p.as_const() {
                    return bool_formula(rational::dn_holds(*n, c));
                }
                if matches!(self.sign(&p, &leaves), SignInfo::Neg | SignInfo::NonPos) {
                    return Formula::False;
                }
                let monos = p.monomial_list();
                if monos.len() == 1 {
                    let (c, m) = &monos[0];
                    let body = to_term(&mono_poly(m), &leaves);
                    let pow_body = self.pow_valued(&body);
                    match power_exponent(c) {
                        Some(k) => {
                            if pow_body && *n == 1 {
                                if let Some(conds) = self.nonzero_conditions(m, &leaves) {
                                    return conj_sorted(conds);
                                }
                            }
                            let k = k.mod_floor(&(*n as i64));
                            return Formula::dn(*n, Term::shifted(k, body));
                        }
                        None if pow_body => return Formula::False,
                        None => {}
                    }
                }
                Formula::dn(*n, to_term(&p, &leaves))
            }
        }
    }

    // ---------- formulas ----------

    pub fn formula(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Atom(a) => self.atom(a),
            Formula::Not(a) => Formula::negate(self.formula(a)),
            Formula::And(..) => {
                let mut parts = BTreeSet::new();
                for c in f.conjuncts() {
                    let s = self.formula(c);
                    match s {
                        Formula::False => return Formula::False,
                        Formula::True => {}
                        Formula::And(..) => {
                            for d in s.conjuncts() {
                                parts.insert(d.clone());
                            }
                        }
                        s => {
                            parts.insert(s);
                        }
                    }
                }
                if has_complement(&parts) {
                    return Formula::False;
                }
                Formula::conj(parts.into_iter().collect())
            }
            Formula::Or(..) => {
                let mut parts = BTreeSet::new();
                for c in f.disjuncts() {
                    let s = self.formula(c);
                    match s {
                        Formula::True => return Formula::True,
                        Formula::False => {}
                        Formula::Or(..) => {
                            for d in s.disjuncts() {
                                parts.insert(d.clone());
                            }
                        }
                        s => {
                            parts.insert(s);
                        }
                    }
                }
                if has_complement(&parts) {
                    return Formula::True;
                }
                Formula::disj(parts.into_iter().collect())
            }
            Formula::Exists(x, a) | Formula::Forall(x, a) => {
                // A bound name shadows a power-of-two assumption; cached
                // results computed under that assumption become invalid.
                let powers_had = self.powers.remove(x);
                if powers_had {
                    self.terms.clear();
                    self.atoms.clear();
                }
                let body = self.formula(a);
                if powers_had {
                    self.powers.insert(x.clone());
                    self.terms.clear();
                    self.atoms.clear();
                }
                if !body.contains_var(x) {
                    return body;
                }
                match f {
                    Formula::Exists(..) => Formula::Exists(x.clone(), Rc::new(body)),
                    _ => Formula::Forall(x.clone(), Rc::new(body)),
                }
            }
        }
    }
}

fn has_complement(parts: &BTreeSet<Formula>) -> bool {
    parts.iter().any(|p| match p {
        Formula::Not(q) => parts.contains(&**q),
        _ => false,
    })
}

fn conj_sorted(v: Vec<Formula>) -> Formula {
    let set: BTreeSet<Formula> = v.into_iter().collect();
    if set.contains(&Formula::False) {
        return Formula::False;
    }
    Formula::conj(set.into_iter().filter(|f| *f != Formula::True).collect())
}

fn bool_formula(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}

fn mono_poly(m: &[(u32, usize)]) -> Poly {
    let mut p = Poly::one();
    for (v, e) in m {
        p = p.mul(&Poly::var(*v).pow(*e as u32));
    }
    p
}

fn to_term(p: &Poly, leaves: &[Term]) -> Term {
    p.to_term(&|i| leaves[i as usize].clone())
}

// ---------- contextual pass ----------

const NEG: u8 = 1;
const ZERO: u8 = 2;
const POS: u8 = 4;
const ANY: u8 = NEG | ZERO | POS;

fn flip(mask: u8) -> u8 {
    (mask & ZERO) | if mask & NEG != 0 { POS } else { 0 } | if mask & POS != 0 { NEG } else { 0 }
}

/// Sign facts about polynomials over shared leaves, plus the truth of `D_n` atoms.
#[derive(Clone, Default)]
struct Facts {
    signs: BTreeMap<Poly, u8>,
    dn: BTreeMap<Atom, bool>,
}

struct Context {
    simp: Simplifier,
    leaves: BTreeMap<Term, u32>,
}

enum Verdict {
    True,
    False,
    Open,
}

impl Context {
    /// The literal as "this polynomial has a sign in `mask`".
    fn constraint(&mut self, a: &Atom, positive: bool) -> Option<(Poly, u8)> {
        let (d, mask) = match a {
            Atom::Eq(l, r) => (Term::sub(l.clone(), r.clone()), ZERO),
            Atom::Lt(l, r) => (Term::sub(r.clone(), l.clone()), POS),
            Atom::Dn { .. } => return None,
        };
        let leaves = &mut self.leaves;
        let p = self.simp.to_poly(&d, &mut |t: Term| {
            let k = leaves.len() as u32;
            *leaves.entry(t).or_insert(k)
        });
        if p.as_const().is_some() {
            return None;
        }
        let mask = if positive { mask } else { ANY & !mask };
        let (key, neg) = p.primitive();
        Some((key, if neg { flip(mask) } else { mask }))
    }

    fn judge(&mut self, a: &Atom, positive: bool, facts: &Facts) -> Verdict {
        if let Atom::Dn { .. } = a {
            return match facts.dn.get(a) {
                Some(&v) if v == positive => Verdict::True,
                Some(_) => Verdict::False,
                None => Verdict::Open,
            };
        }
        let Some((key, mask)) = self.constraint(a, positive) else { return Verdict::Open };
        let allowed = facts.signs.get(&key).copied().unwrap_or(ANY);
        if allowed & !mask == 0 {
            Verdict::True
        } else if allowed & mask == 0 {
            Verdict::False
        } else {
            Verdict::Open
        }
    }

    /// Adds a literal; `false` when the facts become contradictory.
    fn assume(&mut self, a: &Atom, positive: bool, facts: &mut Facts) -> bool {
        if let Atom::Dn { .. } = a {
            return match facts.dn.insert(a.clone(), positive) {
                Some(v) => v == positive,
                None => true,
            };
        }
        match self.constraint(a, positive) {
            Some((key, mask)) => {
                let slot = facts.signs.entry(key).or_insert(ANY);
                *slot &= mask;
                *slot != 0
            }
            None => true,
        }
    }

    fn walk(&mut self, f: &Formula, facts: &Facts) -> Formula {
        if let Some((a, pos)) = as_literal(f) {
            return match self.judge(a, pos, facts) {
                Verdict::True => Formula::True,
                Verdict::False => Formula::False,
                Verdict::Open => f.clone(),
            };
        }
        match f {
            Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
            Formula::Not(a) => Formula::negate(self.walk(a, facts)),
            Formula::And(..) => self.junction(f.conjuncts(), facts, true),
            Formula::Or(..) => self.junction(f.disjuncts(), facts, false),
            Formula::Exists(x, a) => Formula::Exists(x.clone(), Rc::new(self.walk(a, &Facts::default()))),
            Formula::Forall(x, a) => Formula::Forall(x.clone(), Rc::new(self.walk(a, &Facts::default()))),
        }
    }

    /// Conjunction (`conj`) or disjunction. Sibling literals are assumed true
    /// (respectively false) while the other members are simplified.
    fn junction(&mut self, items: Vec<&Formula>, facts: &Facts, conj: bool) -> Formula {
        let (absorb, unit) = if conj { (Formula::False, Formula::True) } else { (Formula::True, Formula::False) };
        let lits: Vec<(&Atom, bool)> = items.iter().filter_map(|c| as_literal(c)).collect();
        let mut kept: Vec<Formula> = Vec::new();
        if lits.len() <= 24 {
            let mut dropped = alloc::vec![false; lits.len()];
            for i in 0..lits.len() {
                let mut local = facts.clone();
                let mut consistent = true;
                for (j, &(a, pos)) in lits.iter().enumerate() {
                    if j != i && !dropped[j] {
                        consistent &= self.assume(a, pos == conj, &mut local);
                    }
                }
                if !consistent {
                    return absorb;
                }
                let (a, pos) = lits[i];
                match (self.judge(a, pos, &local), conj) {
                    (Verdict::True, true) | (Verdict::False, false) => dropped[i] = true,
                    (Verdict::False, true) | (Verdict::True, false) => return absorb,
                    _ => {}
                }
            }
            for (i, &(a, pos)) in lits.iter().enumerate() {
                if !dropped[i] {
                    kept.push(Literal { positive: pos, atom: a.clone() }.to_formula());
                }
            }
        } else {
            for &(a, pos) in &lits {
                match (self.judge(a, pos, facts), conj) {
                    (Verdict::True, true) | (Verdict::False, false) => {}
                    (Verdict::False, true) | (Verdict::True, false) => return absorb,
                    _ => kept.push(Literal { positive: pos, atom: a.clone() }.to_formula()),
                }
            }
        }
        let mut inner = facts.clone();
        for &(a, pos) in &lits {
            if !self.assume(a, pos == conj, &mut inner) {
                return absorb;
            }
        }
        for c in items.iter().filter(|c| as_literal(c).is_none()) {
            let s = self.walk(c, &inner);
            if s == absorb {
                return absorb;
            }
            if s != unit {
                kept.push(s);
            }
        }
        if conj {
            Formula::conj(kept)
        } else {
            Formula::disj(kept)
        }
    }
}

fn as_literal(f: &Formula) -> Option<(&Atom, bool)> {
    match f {
        Formula::Atom(a) => Some((a, true)),
        Formula::Not(g) => match &**g {
            Formula::Atom(a) => Some((a, false)),
            _ => None,
        },
        _ => None,
    }
}

/// Removes literals decided by sign facts of enclosing or sibling literals.
pub fn simplify_in_context(f: &Formula) -> Formula {
    let mut cx = Context { simp: Simplifier::new(), leaves: BTreeMap::new() };
    cx.walk(f, &Facts::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn canonical_atoms_identify_scalings() {
        let a = simplify(&Formula::eq(Term::int(2) * x(), Term::int(6)));
        let b = simplify(&Formula::eq(x(), Term::int(3)));
        assert_eq!(a, b);
        let c = simplify(&Formula::lt(Term::int(3), x()));
        let d = simplify(&Formula::lt(Term::int(6), Term::int(2) * x()));
        assert_eq!(c, d);
    }

    #[test]
    fn ground_folding() {
        let f = Formula::eq(Term::lambda(Term::rat(13, 2)), Term::int(4));
        assert_eq!(simplify(&f), Formula::True);
        assert_eq!(simplify(&Formula::dn(2, Term::int(8))), Formula::False);
        assert_eq!(simplify(&Formula::lt(Term::int(1) / Term::int(0), Term::int(1))), Formula::True);
    }

    #[test]
    fn lambda_identities() {
        let l = Term::lambda(y());
        assert_eq!(simplify_term(&Term::lambda(l.clone())), l);
        assert_eq!(simplify(&Formula::lt(l.clone(), Term::zero())), Formula::False);
        assert_eq!(simplify(&Formula::lt(Term::zero(), l.clone())), simplify(&Formula::lt(Term::zero(), y())));
        assert_eq!(simplify(&Formula::power(Term::int(4) * l.clone())), simplify(&Formula::lt(Term::zero(), y())));
        assert_eq!(simplify(&Formula::dn(2, Term::int(3) * l)), Formula::False);
    }

    #[test]
    fn dn_shift_normalized() {
        let f = simplify(&Formula::dn(2, Term::int(8) * x()));
        assert_eq!(f.to_string(), "D[2](2^1*x)");
        let g = simplify(&Formula::dn(2, Term::int(4) * x()));
        assert_eq!(g.to_string(), "D[2](x)");
    }

    #[test]
    fn propositional_cleanup() {
        let a = Formula::lt(x(), y());
        let f = Formula::and(a.clone(), Formula::not(a.clone()));
        assert_eq!(simplify(&f), Formula::False);
        let g = Formula::or(Formula::or(a.clone(), Formula::False), a.clone());
        assert_eq!(simplify(&g), simplify(&a));
        let q = Formula::exists("z", Formula::lt(x(), y()));
        assert_eq!(simplify(&q), simplify(&a));
    }

    #[test]
    fn powers_context() {
        let powers: BTreeSet<Name> = [Name::from("x")].into_iter().collect();
        let f = Formula::eq(Term::lambda(Term::int(2) * x()), Term::int(2) * x());
        assert_eq!(simplify_with_powers(&f, &powers), Formula::True);
        assert_eq!(simplify_with_powers(&Formula::power(x()), &powers), Formula::True);
        assert_eq!(simplify_with_powers(&Formula::lt(x(), Term::zero()), &powers), Formula::False);
    }

    #[test]
    fn idempotent_on_examples() {
        let fs = [
            Formula::lt(Term::lambda(x() + Term::int(1)) * y(), x() / y()),
            Formula::dn(3, Term::rat(1, 2) * x() * Term::lambda(y())),
            Formula::or(Formula::eq(x() * x(), Term::int(2)), Formula::not(Formula::lt(y(), x()))),
        ];
        for f in fs {
            let s = simplify(&f);
            assert_eq!(simplify(&s), s, "{}", s);
        }
    }
}
