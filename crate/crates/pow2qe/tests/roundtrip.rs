//! Printing a formula and parsing it back gives the same formula.

use pow2qe::harness::gen::{gen_formula, Profile};
use pow2qe::parse_formula;
use pow2qe_core::Formula;
use proptest::prelude::*;

fn profiles() -> Vec<Profile> {
    let vars = |vs: &[&str]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    vec![
        Profile::default(),
        Profile { depth: 3, vars: vars(&["x", "y", "z"]), lambda_nesting: 2, moduli: vec![2, 3, 5], division: true, term_depth: 3 },
        Profile { depth: 1, vars: vars(&["a"]), lambda_nesting: 1, moduli: vec![4], division: true, term_depth: 2 },
        Profile { depth: 4, vars: vars(&["x", "u"]), lambda_nesting: 0, moduli: vec![], division: true, term_depth: 1 },
    ]
}

/// Wraps `f` in a quantifier prefix chosen by the bits of `mask`.
fn quantify(f: Formula, vars: &[String], mask: u64) -> Formula {
    vars.iter().enumerate().fold(f, |g, (i, v)| match (mask >> (2 * i)) & 3 {
        0 => g,
        1 => Formula::exists(v.as_str(), g),
        2 => Formula::forall(v.as_str(), g),
        _ => Formula::not(Formula::exists(v.as_str(), g)),
    })
}

fn round_trip(f: &Formula) -> Result<(), String> {
    let printed = f.to_string();
    match parse_formula(&printed) {
        Ok(g) if &g == f => Ok(()),
        Ok(g) => Err(format!("{printed} reparsed as {g}")),
        Err(e) => Err(format!("{printed}: {e}")),
    }
}

#[test]
fn thousand_generated_formulas() {
    let profiles = profiles();
    let mut failures = Vec::new();
    for seed in 0..1000u64 {
        let p = &profiles[(seed % profiles.len() as u64) as usize];
        let f = quantify(gen_formula(seed, p), &p.vars, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 40);
        if let Err(e) = round_trip(&f) {
            failures.push(format!("seed {seed}: {e}"));
        }
    }
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
}

proptest! {
    #[test]
    fn arbitrary_seeds(seed in any::<u64>(), which in 0usize..4, mask in any::<u64>()) {
        let p = &profiles()[which];
        let f = quantify(gen_formula(seed, p), &p.vars, mask);
        prop_assert_eq!(round_trip(&f), Ok(()));
    }
}
