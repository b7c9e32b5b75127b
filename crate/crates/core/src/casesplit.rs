//! Finite disjunctions of guarded results.

use alloc::vec;
use alloc::vec::Vec;

use crate::formula::Formula;

/// A list of `(guard, result)` pairs whose guards jointly cover the situation
/// the producing operation was asked about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSplit<T> {
    pub cases: Vec<(Formula, T)>,
}

impl<T: Clone> CaseSplit<T> {
    pub fn single(v: T) -> Self {
        CaseSplit { cases: vec![(Formula::True, v)] }
    }

    pub fn new(cases: Vec<(Formula, T)>) -> Self {
        CaseSplit { cases: cases.into_iter().filter(|(g, _)| *g != Formula::False).collect() }
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> CaseSplit<U> {
        CaseSplit { cases: self.cases.iter().map(|(g, v)| (g.clone(), f(v))).collect() }
    }

    /// Refines every case by a case split depending on its result.
    pub fn bind<U: Clone>(&self, mut f: impl FnMut(&T) -> CaseSplit<U>) -> CaseSplit<U> {
        let mut out = Vec::new();
        for (g, v) in &self.cases {
            for (h, u) in f(v).cases {
                let guard = Formula::and2(g.clone(), h);
                if guard != Formula::False {
                    out.push((guard, u));
                }
            }
        }
        CaseSplit { cases: out }
    }

    /// Cartesian product of two splits.
    pub fn zip<U: Clone>(&self, other: &CaseSplit<U>) -> CaseSplit<(T, U)> {
        self.bind(|a| other.map(|b| (a.clone(), b.clone())))
    }

    /// `⋁ (guard ∧ body(result))`.
    pub fn to_formula(&self, mut body: impl FnMut(&T) -> Formula) -> Formula {
        Formula::disj(self.cases.iter().map(|(g, v)| Formula::and2(g.clone(), body(v))).collect())
    }

    pub fn guards(&self) -> Vec<Formula> {
        self.cases.iter().map(|(g, _)| g.clone()).collect()
    }
}
