//! Text syntax, command-line front end and verification harness for
//! [`pow2qe_core`].

pub mod cli;
pub mod clock;
pub mod harness;
pub mod parse;
pub mod report;

pub use parse::{parse_formula, parse_term, ParseError};
