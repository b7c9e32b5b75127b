//! Curated parametric instances for the real-closed-field kernel.
//!
//! Parameters are `a`, `b`, `c`; every instance has degree at most four and at
//! most two quantifier blocks.

use num_rational::BigRational;
use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::limits::Guard;
use pow2qe_core::rcf::qe_rcf;
use pow2qe_core::term::Name;
use rand::Rng;

use super::oracle::{oracle_decide, OracleConfig};
use super::sample::{ratio, rng, show, small_rational, Rng8};
use crate::parse_formula;

pub const INSTANCES: [&str; 30] = [
    // Discriminant family.
    "exists x. x^2 + a*x + b = 0",
    "exists x. a*x^2 + b*x + c = 0",
    "exists x. a*x^2 + b*x + c < 0",
    "forall x. a*x^2 + b*x + c > 0",
    "forall x. x^2 + a*x + b >= 0",
    "exists x. exists y. y = x^2 and y = a*x + b",
    // Univariate, higher degree.
    "exists x. x^3 + a*x + b = 0 and x > 0",
    "exists x. x^4 + a*x^2 + b = 0",
    "exists x. x^4 + a*x + b < 0",
    "exists x. x^3 - a*x^2 + b*x - c = 0 and x < 0",
    "forall x. a*x^4 + b*x^2 + c >= 0",
    "exists x. x^4 - a*x^3 + b = 0",
    // Several constraints on one variable.
    "exists x. a*x^2 + b*x + c <= 0 and x > 0",
    "exists x. a*x + b = 0 and c*x + 1 = 0",
    "exists x. a*x > b and x < c",
    "exists x. a < x and x < b and x^2 = c",
    "forall x. x > a -> x^2 > b",
    "exists x. (x - a)*(x - b) < 0 and x*c > 1",
    "exists x. x^2 = a and x^3 = b",
    "exists x. x^2 + a*x + b = 0 and x^2 + c*x + 1 = 0",
    "exists x. a*x^2 + b*x + c = 0 and 0 < x and x < 1",
    "exists x. x != a and x^2 <= b",
    // Two variables.
    "exists x. exists y. x^2 + y^2 < a and x + y > b",
    "exists x. exists y. x*y = a and x + y = b",
    "forall x. exists y. a*y = x",
    "exists x. forall y. x*y^2 + a*y + b > 0",
    "forall x. forall y. x^2 + y^2 >= a*x*y",
    "exists x. exists y. x^2 + y^2 = a and y > b*x",
    "forall x. exists y. x*y = 1 or x = a",
    "forall x. exists y. y^3 + a*y = x + b",
];

/// Parameter values: small integers often, so degenerate cases such as a
/// vanishing discriminant are hit.
pub fn sample_params(r: &mut Rng8) -> Assignment {
    let mut v = || -> BigRational {
        match r.gen_range(0..10) {
            0..=4 => ratio(r.gen_range(-3..=3), 1),
            5..=8 => small_rational(r),
            _ => ratio(r.gen_range(-40..=40), 1),
        }
    };
    ["a", "b", "c"].iter().map(|p| (Name::from(*p), v())).collect()
}

#[derive(Clone, Debug, Default)]
pub struct RcfReport {
    pub instances: usize,
    pub samples: usize,
    /// Samples on which the oracle answer was proven.
    pub exact_samples: usize,
    pub disagreements: Vec<String>,
    pub errors: Vec<String>,
}

impl RcfReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }
}

/// Eliminates each instance once and compares the result with the oracle at
/// `samples` parameter points.
pub fn run(samples: usize, seed: u64, guard: &Guard) -> RcfReport {
    let mut rep = RcfReport { instances: INSTANCES.len(), ..RcfReport::default() };
    let cfg = OracleConfig::default();
    for (i, text) in INSTANCES.iter().enumerate() {
        let f = parse_formula(text).expect("curated instance parses");
        let qf = match qe_rcf(&f, guard) {
            Ok(g) => g,
            Err(e) => {
                rep.errors.push(format!("{text}: {e}"));
                continue;
            }
        };
        if !qf.is_quantifier_free() {
            rep.errors.push(format!("{text}: output has quantifiers"));
            continue;
        }
        let mut r = rng(seed ^ (i as u64) << 32);
        for _ in 0..samples {
            let env = sample_params(&mut r);
            rep.samples += 1;
            let got = eval_qf(&qf, &env);
            let want = oracle_decide(&f, &env, &cfg);
            match (got, want) {
                (Ok(g), Ok(w)) => {
                    if w.exact {
                        rep.exact_samples += 1;
                    }
                    if g != w.value {
                        rep.disagreements.push(format!("{text} at {}: kernel {g}, oracle {w:?}", show(&env)));
                    }
                }
                (g, w) => rep.errors.push(format!("{text} at {}: {g:?} / {w:?}", show(&env))),
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_parse_within_bounds() {
        for text in INSTANCES {
            let f = parse_formula(text).unwrap();
            let free = f.free_vars();
            assert!(free.iter().all(|v| ["a", "b", "c"].contains(&&**v)), "{text}");
        }
    }

    #[test]
    fn few_samples_agree() {
        let rep = run(5, 3, &Guard::default());
        assert!(rep.passed(), "{:?}", rep);
    }
}
