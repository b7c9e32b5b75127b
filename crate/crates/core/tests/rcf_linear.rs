//! The field kernel on conjunctions linear in the quantified variable, against
//! a direct check at the roots, between them and beyond them.

use num_rational::BigRational;
use num_traits::Zero;
use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::limits::Guard;
use pow2qe_core::rcf::qe_rcf;
use pow2qe_core::{Formula, Name, Term};
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Coef {
    Int(i64),
    Param,
}

fn coef() -> impl Strategy<Value = Coef> {
    prop_oneof![3 => (-3i64..=3).prop_map(Coef::Int), 1 => Just(Coef::Param)]
}

fn term(c: &Coef) -> Term {
    match c {
        Coef::Int(k) => Term::int(*k),
        Coef::Param => Term::var("a"),
    }
}

fn value(c: &Coef, a: &BigRational) -> BigRational {
    match c {
        Coef::Int(k) => BigRational::from_integer((*k).into()),
        Coef::Param => a.clone(),
    }
}

/// `(c, d, rel)`: `c·x + d rel 0` with rel 0..4 = `=`, `<`, `>`, `!=`, `<=`.
type Constraint = (Coef, Coef, u8);

fn literal((c, d, rel): &Constraint) -> Formula {
    let lhs = Term::add(Term::mul(term(c), Term::var("x")), term(d));
    let z = Term::zero();
    match rel {
        0 => Formula::eq(lhs, z),
        1 => Formula::lt(lhs, z),
        2 => Formula::lt(z, lhs),
        3 => Formula::not(Formula::eq(lhs, z)),
        _ => Formula::not(Formula::lt(z, lhs)),
    }
}

/// Satisfiability with `a` fixed: the truth of linear constraints is constant
/// between consecutive roots, so roots, midpoints and two outer points suffice.
fn brute(cs: &[Constraint], a: &BigRational) -> bool {
    let body = Formula::conj(cs.iter().map(literal).collect());
    let mut roots: Vec<BigRational> = cs
        .iter()
        .filter_map(|(c, d, _)| {
            let (c, d) = (value(c, a), value(d, a));
            (!c.is_zero()).then(|| -d / c)
        })
        .collect();
    roots.sort();
    roots.dedup();
    let one = BigRational::from_integer(1.into());
    let mut pts = roots.clone();
    pts.extend(roots.windows(2).map(|w| (&w[0] + &w[1]) / BigRational::from_integer(2.into())));
    match (roots.first(), roots.last()) {
        (Some(lo), Some(hi)) => {
            pts.push(lo - &one);
            pts.push(hi + &one);
        }
        _ => pts.push(BigRational::zero()),
    }
    pts.into_iter().any(|x| {
        let env: Assignment = [(Name::from("a"), a.clone()), (Name::from("x"), x)].into_iter().collect();
        eval_qf(&body, &env).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn linear_conjunctions(cs in prop::collection::vec((coef(), coef(), 0u8..5), 1..5)) {
        let f = Formula::exists("x", Formula::conj(cs.iter().map(literal).collect()));
        let q = qe_rcf(&f, &Guard::default()).unwrap();
        prop_assert!(q.is_quantifier_free());
        for (n, d) in [(-3, 1), (-1, 2), (0, 1), (1, 3), (1, 1), (2, 1), (5, 1)] {
            let a = BigRational::new(n.into(), d.into());
            let env: Assignment = [(Name::from("a"), a.clone())].into_iter().collect();
            prop_assert_eq!(eval_qf(&q, &env).unwrap(), brute(&cs, &a), "a = {} in {} gives {}", a, f, q);
        }
    }
}
