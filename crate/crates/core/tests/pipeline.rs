//! End-to-end elimination on sentences whose truth is known by hand.

use num_rational::BigRational;
use pow2qe_core::eval::{eval_qf, Assignment};
use pow2qe_core::limits::Guard;
use pow2qe_core::pipeline::{decide, eliminate_all};
use pow2qe_core::{Formula, Name, Term};

fn v(n: &str) -> Term {
    Term::var(n)
}

fn between(lo: Term, x: Term, hi: Term) -> Formula {
    Formula::and(Formula::lt(lo, x.clone()), Formula::lt(x, hi))
}

fn holds(f: &Formula) -> bool {
    decide(f, &Guard::default()).unwrap()
}

#[test]
fn powers_in_intervals() {
    let pow_between = |lo, hi| Formula::exists("x", Formula::and(Formula::power(v("x")), between(Term::int(lo), v("x"), Term::int(hi))));
    assert!(holds(&pow_between(3, 5)));
    assert!(!holds(&pow_between(4, 8)));
    assert!(holds(&pow_between(-1, 1)));
}

#[test]
fn divisibility_of_powers() {
    let x = v("x");
    let f = Formula::exists(
        "x",
        Formula::conj(vec![Formula::power(x.clone()), Formula::dn(2, x.clone()), Formula::not(Formula::dn(4, x))]),
    );
    assert!(holds(&f));
}

#[test]
fn no_power_squares_to_two() {
    let f = Formula::exists("x", Formula::and(Formula::power(v("x")), Formula::eq(Term::mul(v("x"), v("x")), Term::int(2))));
    assert!(!holds(&f));
}

#[test]
fn powers_are_dense_up_to_factor_two() {
    // Every positive real has a power of two in [y, 2y).
    let body = Formula::exists("p", Formula::conj(vec![
        Formula::power(v("p")),
        Formula::le(v("y"), v("p")),
        Formula::lt(v("p"), Term::mul(Term::int(2), v("y"))),
    ]));
    let f = Formula::forall("y", Formula::implies(Formula::lt(Term::zero(), v("y")), body));
    assert!(holds(&f));
}

#[test]
fn floor_power_free_variable() {
    // L(x) = 4 exactly on [4, 8).
    let f = Formula::exists("p", Formula::and(Formula::eq(Term::lambda(v("x")), v("p")), Formula::eq(v("p"), Term::int(4))));
    let g = eliminate_all(&f, &Guard::default()).unwrap();
    assert!(g.is_quantifier_free());
    for (n, d) in [(3, 1), (4, 1), (15, 2), (8, 1), (-4, 1), (31, 4)] {
        let x = BigRational::new(n.into(), d.into());
        let expect = x >= BigRational::from_integer(4.into()) && x < BigRational::from_integer(8.into());
        let env: Assignment = [(Name::from("x"), x)].into_iter().collect();
        assert_eq!(eval_qf(&g, &env).unwrap(), expect, "x = {n}/{d}");
    }
}
