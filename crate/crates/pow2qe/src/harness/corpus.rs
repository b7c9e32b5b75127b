//! Sentences for end-to-end runs. Truth values are not stored: they are
//! computed by the oracle at run time and compared with the pipeline.

use std::time::Instant;

use pow2qe_core::eval::Assignment;
use pow2qe_core::limits::Guard;
use pow2qe_core::pipeline::{decide, eliminate_all};
use pow2qe_core::Formula;

use super::oracle::{oracle_decide, OracleConfig, Verdict};
use crate::parse_formula;

pub const DENSITY_AXIOM: &str = "forall x. x > 0 -> exists y. A(y) and y <= x and x < 2*y";

pub const SENTENCES: &[&str] = &[
    // Powers of two.
    "exists x. A(x) and 3 < x and x < 5",
    "exists x. A(x) and 5 < x and x < 7",
    "exists x. A(x) and 4 < x and x < 8",
    "exists x. A(x) and x*x = 2",
    "exists x. A(x) and x*x = 16",
    "exists x. A(x) and x < 0",
    "forall x. A(x) -> x > 0",
    "exists x. A(x) and 2*x*x - 3*x = 2",
    "exists x. A(x) and x*x*x = 1/8",
    "exists x. A(x) and x*x*x = 1/4",
    "forall x. A(x) -> A(2*x)",
    "forall x. A(x) -> A(3*x)",
    "exists x. A(x) and A(x + 1)",
    "exists x. A(x) and A(x + 3)",
    "exists x. A(x) and A(x + 5)",
    "forall x. A(x) -> A(1/x)",
    "exists x. A(x) and 1000 < x and x < 1024",
    "exists x. A(x) and 1000 < x and x <= 1024",
    "exists x. exists y. A(x) and A(y) and x + y = 3",
    "forall x. forall y. A(x) and A(y) -> A(x*y)",
    // Exponent congruences.
    "exists x. D[2](x) and 5 < x and x < 15",
    "exists x. D[2](x) and 5 < x and x < 17",
    "exists x. D[3](x) and D[2](x) and 2 < x and x < 60",
    "exists x. D[3](x) and D[2](x) and 2 < x and x < 65",
    "forall x. D[4](x) -> D[2](x)",
    "exists x. A(x) and D[2](x) and not D[4](x)",
    "forall x. D[2](x) -> D[4](x)",
    "exists x. D[3](x) and D[3](2*x)",
    "forall x. A(x) -> D[2](x) or D[2](2*x)",
    "exists x. D[2](x) and x*x = 16",
    "exists x. D[2](x) and x*x = 64",
    "forall x. D[2](x) -> exists y. A(y) and y*y = x",
    // The function λ.
    "forall x. x > 0 -> L(x) <= x",
    "forall x. L(x) <= x",
    "forall x. x > 0 -> x < 2*L(x)",
    "exists x. L(x) = 3",
    "exists x. L(x) = 4 and x > 5",
    "exists x. L(x) = 4 and x >= 8",
    "forall x. x > 0 -> A(L(x))",
    "forall x. x > 0 -> D[2](L(x)) or D[2](2*L(x))",
    "exists x. L(x*x) = 2",
    "exists x. L(x) + L(x + 1) = 3",
    "exists x. L(x) + L(x + 1) = 5",
    "forall x. L(2*x) = 2*L(x)",
    "exists x. L(3*x) = 3*L(x)",
    "exists x. x > 0 and L(3*x) = 3*L(x)",
    // Alternation.
    DENSITY_AXIOM,
    "forall x. x > 0 -> exists y. D[2](y) and y <= x and x < 4*y",
    "forall x. x > 0 -> exists y. D[2](y) and y <= x and x < 2*y",
    "forall x. x > 1 -> exists y. A(y) and x < y and y <= 2*x",
    // Mixed with real arithmetic.
    "exists x. x*x = 2",
    "forall x. exists y. y*y*y = x",
    "exists x. exists y. A(x) and y*y = x and 2 < y and y < 3",
    "exists x. A(x) and L(x + 1) = x",
    "exists x. A(x) and L(3*x) = x",
    "forall x. A(x) -> L(3*x) = 2*x",
    "exists x. A(x) and D[3](L(5*x))",
];

/// Open formulas whose elimination output is checked syntactically.
pub const OPEN: &[&str] = &[
    "exists y. A(y) and y <= x and x < 2*y",
    "exists y. A(y) and x < y and y < 3*x",
    "exists y. D[2](y) and x*y = 1",
    "exists y. A(y) and L(x + y) = 4",
    "forall y. A(y) -> y != x",
    "exists y. A(y) and y*y < x and x < 2*y*y",
    "exists y. y*y = x and y > 1",
    "exists y. A(y) and y/x > 3",
    "exists y. D[3](y) and z < y and y < x",
    "exists y. A(y) and L(y*x) = 2*y",
];

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub text: String,
    pub pipeline: Result<bool, String>,
    pub oracle: Result<Verdict, String>,
    pub millis: u128,
}

impl CorpusItem {
    pub fn agrees(&self) -> bool {
        matches!((&self.pipeline, &self.oracle), (Ok(p), Ok(o)) if *p == o.value)
    }
}

pub fn run_item(text: &str, guard: &Guard) -> CorpusItem {
    let f = parse_formula(text).expect("corpus sentence parses");
    let start = Instant::now();
    let pipeline = decide(&f, guard).map_err(|e| e.to_string());
    let millis = start.elapsed().as_millis();
    let oracle = oracle_decide(&f, &Assignment::new(), &OracleConfig::default());
    CorpusItem { text: text.into(), pipeline, oracle, millis }
}

pub fn run_corpus(guard: &Guard) -> Vec<CorpusItem> {
    SENTENCES.iter().map(|s| run_item(s, guard)).collect()
}

/// Elimination output for an open formula, with the violated postconditions.
pub fn open_postconditions(text: &str, guard: &Guard) -> Result<(Formula, Vec<&'static str>), String> {
    let f = parse_formula(text).map_err(|e| e.to_string())?;
    let out = eliminate_all(&f, guard).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    if !out.is_quantifier_free() {
        bad.push("quantifier-free");
    }
    if !out.is_division_free() {
        bad.push("division-free");
    }
    Ok((out, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_enough_and_parses() {
        assert!(SENTENCES.len() >= 50);
        assert!(SENTENCES.contains(&DENSITY_AXIOM));
        for s in SENTENCES {
            let f = parse_formula(s).unwrap();
            assert!(f.free_vars().is_empty(), "{s}");
        }
    }

    #[test]
    fn a_few_items_agree() {
        let g = Guard::default();
        for s in &SENTENCES[..4] {
            let item = run_item(s, &g);
            assert!(item.agrees(), "{item:?}");
        }
    }
}
