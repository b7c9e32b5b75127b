//! Deliberate corruptions of rewrite outputs. The lemma suite must notice each one.

use pow2qe_core::{Atom, Formula, Term};

use super::lemmas::Lemma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Drop `x = 2^n λ(u)` from the window.
    WindowDropTop,
    /// Drop `D_n(x)` from the shift cover.
    CoverDropUnshifted,
    /// Exchange the two values of `λ(x/y)`.
    QuotientSwapValues,
    /// Drop the first disjunct of the cleared formula.
    ClearDropDisjunct,
    /// Shift the numerator-side atoms of `D_n(x/y)` by one.
    DnQuotientShiftNumerator,
    /// Weaken the first strict inequality of the division-free output.
    DivisionStrictToWeak,
    /// Drop the pins with `i < j`.
    PinsDropIncreasing,
    /// Drop the last value of `λ(p(x))`.
    MonomialDropLast,
    /// Shift the coefficient-side atoms of the monomial split by one.
    MonomialSplitShiftCoefficient,
    /// Drop the inequality cases with the largest exponent offset.
    CasesDropTopOffset,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::WindowDropTop,
        Mutation::CoverDropUnshifted,
        Mutation::QuotientSwapValues,
        Mutation::ClearDropDisjunct,
        Mutation::DnQuotientShiftNumerator,
        Mutation::DivisionStrictToWeak,
        Mutation::PinsDropIncreasing,
        Mutation::MonomialDropLast,
        Mutation::MonomialSplitShiftCoefficient,
        Mutation::CasesDropTopOffset,
    ];

    /// The lemma check whose rewrite this mutation corrupts.
    pub fn lemma(self) -> Lemma {
        match self {
            Mutation::WindowDropTop => Lemma::LambdaWindow,
            Mutation::CoverDropUnshifted => Lemma::DnShiftCover,
            Mutation::QuotientSwapValues => Lemma::RewriteLambdaQuotient,
            Mutation::ClearDropDisjunct => Lemma::ClearLambdaDivision,
            Mutation::DnQuotientShiftNumerator => Lemma::DnOfQuotient,
            Mutation::DivisionStrictToWeak => Lemma::EliminateDivision,
            Mutation::PinsDropIncreasing => Lemma::LambdaCasesEquality,
            Mutation::MonomialDropLast => Lemma::LambdaPolyMonomial,
            Mutation::MonomialSplitShiftCoefficient => Lemma::DnMonomialSplit,
            Mutation::CasesDropTopOffset => Lemma::LambdaCasesInequality,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::WindowDropTop => "window-drop-top",
            Mutation::CoverDropUnshifted => "cover-drop-unshifted",
            Mutation::QuotientSwapValues => "quotient-swap-values",
            Mutation::ClearDropDisjunct => "clear-drop-disjunct",
            Mutation::DnQuotientShiftNumerator => "dn-quotient-shift-numerator",
            Mutation::DivisionStrictToWeak => "division-strict-to-weak",
            Mutation::PinsDropIncreasing => "pins-drop-increasing",
            Mutation::MonomialDropLast => "monomial-drop-last",
            Mutation::MonomialSplitShiftCoefficient => "monomial-split-shift-coefficient",
            Mutation::CasesDropTopOffset => "cases-drop-top-offset",
        }
    }
}

/// `f` without its first top-level disjunct (unchanged when there is only one).
pub fn drop_first_disjunct(f: &Formula) -> Formula {
    let ds = f.disjuncts();
    if ds.len() < 2 {
        return f.clone();
    }
    Formula::disj(ds[1..].iter().map(|d| (*d).clone()).collect())
}

/// `f` without its last top-level disjunct.
pub fn drop_last_disjunct(f: &Formula) -> Formula {
    let ds = f.disjuncts();
    Formula::disj(ds[..ds.len().saturating_sub(1)].iter().map(|d| (*d).clone()).collect())
}

/// Replaces `D_n(t)` by `D_n(2t)` wherever `pick(t)` holds.
pub fn shift_dn_atoms(f: &Formula, pick: &dyn Fn(&Term) -> bool) -> Formula {
    f.map_atoms(&mut |a| match a {
        Atom::Dn { n, arg } if pick(arg) => Formula::dn(*n, Term::shifted(1, arg.clone())),
        a => Formula::Atom(a.clone()),
    })
}

/// Turns the first `a < b` (in a left-to-right walk) into `a <= b`.
pub fn weaken_first_strict(f: &Formula) -> Formula {
    let mut done = false;
    f.map_atoms(&mut |a| match a {
        Atom::Lt(l, r) if !done => {
            done = true;
            Formula::le(l.clone(), r.clone())
        }
        a => Formula::Atom(a.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_mutation_targets_a_distinct_name() {
        let names: HashSet<_> = Mutation::ALL.iter().map(|m| m.name()).collect();
        assert_eq!(names.len(), Mutation::ALL.len());
    }

    #[test]
    fn weaken_touches_one_atom() {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let f = Formula::and(Formula::lt(x.clone(), y.clone()), Formula::lt(y.clone(), x.clone()));
        let g = weaken_first_strict(&f);
        assert_eq!(g, Formula::and(Formula::le(x.clone(), y.clone()), Formula::lt(y, x)));
    }
}
