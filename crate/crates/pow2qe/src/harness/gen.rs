//! Seeded random formulas.

use pow2qe_core::polyx::PolyInX;
use pow2qe_core::{Formula, Term};
use rand::seq::SliceRandom;
use rand::Rng;

use super::sample::{rng, Rng8};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    /// Depth of the propositional structure.
    pub depth: u32,
    pub vars: Vec<String>,
    /// Maximal nesting of `λ`; when positive, some term reaches it.
    pub lambda_nesting: u32,
    /// Moduli for `D_n` atoms; empty means no `D_n` atoms.
    pub moduli: Vec<u32>,
    pub division: bool,
    /// Depth of arithmetic terms.
    pub term_depth: u32,
}

impl Default for Profile {
    fn default() -> Self {
        Profile { depth: 2, vars: vec!["x".into(), "y".into()], lambda_nesting: 0, moduli: vec![], division: false, term_depth: 2 }
    }
}

pub fn gen_formula(seed: u64, profile: &Profile) -> Formula {
    let mut r = rng(seed);
    let mut g = Gen { r: &mut r, p: profile };
    let f = g.formula(profile.depth);
    if profile.lambda_nesting > 0 && max_lambda_nesting(&f) < profile.lambda_nesting {
        let v = g.var();
        let mut t = v;
        for _ in 0..profile.lambda_nesting {
            t = Term::lambda(Term::add(t, Term::int(g.r.gen_range(0..3))));
        }
        return Formula::and(f, Formula::lt(t, Term::int(g.r.gen_range(1..9))));
    }
    f
}

pub fn gen_term(r: &mut Rng8, profile: &Profile) -> Term {
    Gen { r, p: profile }.term(profile.term_depth, profile.lambda_nesting)
}

/// `Σ c_i x^i` with random coefficient terms over the profile's variables
/// other than `x`; some coefficients are zero.
pub fn gen_poly_in_x(r: &mut Rng8, profile: &Profile, x: &str, degree: usize) -> PolyInX {
    let params: Vec<String> = profile.vars.iter().filter(|v| *v != x).cloned().collect();
    let sub = Profile { vars: params, ..profile.clone() };
    let mut coeffs = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let zero = i < degree && r.gen_bool(0.3);
        coeffs.push(if zero { Term::zero() } else { Gen { r: &mut *r, p: &sub }.coeff() });
    }
    PolyInX { var: x.into(), coeffs }
}

fn max_lambda_nesting(f: &Formula) -> u32 {
    fn depth(t: &Term) -> u32 {
        match t {
            Term::Var(_) | Term::Const(_) | Term::Pow2(_) => 0,
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => depth(a).max(depth(b)),
            Term::Lambda(a) => 1 + depth(a),
        }
    }
    let mut d = 0;
    f.visit_atoms(&mut |a| {
        for t in a.terms().iter().flatten() {
            d = d.max(depth(t));
        }
    });
    d
}

struct Gen<'a> {
    r: &'a mut Rng8,
    p: &'a Profile,
}

impl Gen<'_> {
    fn var(&mut self) -> Term {
        match self.p.vars.choose(self.r) {
            Some(v) => Term::var(v),
            None => Term::int(1),
        }
    }

    fn constant(&mut self) -> Term {
        match self.r.gen_range(0..6) {
            0 => Term::pow2(self.r.gen_range(-3..=3)),
            1 => Term::rat(self.r.gen_range(-5..=5), self.r.gen_range(1..=4)),
            _ => Term::int(self.r.gen_range(-4..=6)),
        }
    }

    fn leaf(&mut self) -> Term {
        if self.p.vars.is_empty() || self.r.gen_bool(0.35) {
            self.constant()
        } else {
            self.var()
        }
    }

    /// A coefficient: a constant, a variable, or `λ` of one.
    fn coeff(&mut self) -> Term {
        match self.r.gen_range(0..5) {
            0 if self.p.lambda_nesting > 0 && !self.p.vars.is_empty() => {
                let v = self.var();
                Term::lambda(v)
            }
            1 | 2 if !self.p.vars.is_empty() => self.var(),
            _ => {
                let c = self.constant();
                if c.is_zero() {
                    Term::one()
                } else {
                    c
                }
            }
        }
    }

    fn term(&mut self, depth: u32, lam: u32) -> Term {
        if depth == 0 {
            return self.leaf();
        }
        match self.r.gen_range(0..10) {
            0 | 1 => Term::add(self.term(depth - 1, lam), self.term(depth - 1, lam)),
            2 => Term::sub(self.term(depth - 1, lam), self.term(depth - 1, lam)),
            // Products keep one side a leaf so degrees stay small.
            3 | 4 => Term::mul(self.leaf(), self.term(depth - 1, lam)),
            5 if self.p.division => Term::div(self.term(depth - 1, lam), self.leaf()),
            6 | 7 if lam > 0 => Term::lambda(self.term(depth - 1, lam - 1)),
            _ => self.leaf(),
        }
    }

    fn atom(&mut self) -> Formula {
        let kinds = if self.p.moduli.is_empty() { 2 } else { 3 };
        match self.r.gen_range(0..kinds) {
            0 => Formula::lt(self.term(self.p.term_depth, self.p.lambda_nesting), self.term(self.p.term_depth, self.p.lambda_nesting)),
            1 => Formula::eq(self.term(self.p.term_depth, self.p.lambda_nesting), self.term(self.p.term_depth, self.p.lambda_nesting)),
            _ => {
                let n = *self.p.moduli.choose(self.r).expect("nonempty moduli");
                Formula::dn(n, self.term(self.p.term_depth, self.p.lambda_nesting))
            }
        }
    }

    fn formula(&mut self, depth: u32) -> Formula {
        if depth == 0 {
            return self.atom();
        }
        match self.r.gen_range(0..6) {
            0 | 1 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            2 | 3 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            4 => Formula::not(self.formula(depth - 1)),
            _ => self.atom(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_lambda(f: &Formula) -> bool {
        let mut yes = false;
        f.visit_atoms(&mut |a| yes |= a.terms().iter().flatten().any(|t| t.has_lambda()));
        yes
    }

    #[test]
    fn profile_contracts() {
        let f = gen_formula(0, &Profile { depth: 2, ..Profile::default() });
        assert!(!has_lambda(&f) && f.is_division_free());
        assert!(f.atoms().iter().all(|a| !matches!(a, pow2qe_core::Atom::Dn { .. })));

        let f = gen_formula(1, &Profile { lambda_nesting: 2, ..Profile::default() });
        assert!(max_lambda_nesting(&f) >= 2);

        let f = gen_formula(2, &Profile { moduli: vec![2, 3], depth: 3, ..Profile::default() });
        assert!(f.atoms().iter().all(|a| match a {
            pow2qe_core::Atom::Dn { n, .. } => *n == 2 || *n == 3,
            _ => true,
        }));
    }

    #[test]
    fn deterministic() {
        let p = Profile { lambda_nesting: 1, moduli: vec![2], division: true, depth: 3, ..Profile::default() };
        for seed in 0..20 {
            assert_eq!(gen_formula(seed, &p), gen_formula(seed, &p));
        }
    }
}
