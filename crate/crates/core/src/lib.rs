//! Quantifier elimination for the real ordered field extended by the predicate
//! "is an integer power of two", the function `λ` (largest power of two not above
//! the argument) and the predicates `D_n` (powers of two whose exponent is a
//! multiple of `n`).
//!
//! The crate is `no_std` with `alloc`. Time limits use an injected [`limits::Clock`].

#![no_std]

extern crate alloc;

pub mod casesplit;
pub mod division;
pub mod error;
pub mod eval;
pub mod exponent;
pub mod limits;
pub mod normal;
pub mod pipeline;
pub mod polyx;
pub mod rcf;
pub mod simple;
pub mod simplify;
pub mod formula;
pub mod measure;
pub mod mpoly;
pub mod print;
pub mod rational;
pub mod term;
pub mod upoly;

pub use error::{Error, Result};
pub use formula::{Atom, Formula, Literal};
pub use rational::ExactRational;
pub use term::{Name, Term};
