//! The embedded lemma-equivalence suite, with mutation checks, as JSON.

use serde::Serialize;

use super::lemmas::{check_lemma_equivalence, detects, Lemma};
use super::mutation::Mutation;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaEntry {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub full_instances: usize,
    pub samples: usize,
    pub postcondition_violations: usize,
    pub redrawn: usize,
    pub millis: u128,
    /// First counterexample or error, if any.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationEntry {
    pub name: &'static str,
    pub target: &'static str,
    pub detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub seed: u64,
    pub lemmas: Vec<LemmaEntry>,
    pub mutations: Vec<MutationEntry>,
}

pub fn run(instances: usize, samples: usize, seed: u64) -> SelftestReport {
    let lemmas: Vec<LemmaEntry> = Lemma::ALL
        .iter()
        .map(|&l| {
            let rep = check_lemma_equivalence(l, instances, samples, seed, None);
            LemmaEntry {
                name: l.name(),
                passed: rep.passed(),
                instances: rep.instances,
                full_instances: rep.full_instances,
                samples: rep.samples,
                postcondition_violations: rep.postcondition_violations,
                redrawn: rep.redrawn,
                millis: rep.millis,
                failure: rep.failures.first().map(|f| f.to_string()),
            }
        })
        .collect();
    let mutations: Vec<MutationEntry> = Mutation::ALL
        .iter()
        .map(|&m| MutationEntry { name: m.name(), target: m.lemma().name(), detected: detects(m, instances, samples, seed) })
        .collect();
    let passed = lemmas.iter().all(|l| l.passed) && mutations.iter().all(|m| m.detected);
    SelftestReport { passed, seed, lemmas, mutations }
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
