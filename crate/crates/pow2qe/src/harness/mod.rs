//! Verification harness: random generators, independent oracles, lemma checks,
//! seeded mutations and the corpora behind the acceptance suite.

pub mod gen;
pub mod sample;
pub mod lemmas;
pub mod mutation;
pub mod oracle;
pub mod theta;
pub mod rcf_instances;
pub mod corpus;
pub mod growth;
pub mod selftest;
