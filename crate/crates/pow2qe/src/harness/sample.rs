//! Random exact values for sampling.

use num_bigint::BigInt;
use num_rational::BigRational;
use pow2qe_core::eval::Assignment;
use pow2qe_core::rational::pow2;
use pow2qe_core::term::Name;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A small rational with numerator in `[-12, 12]` and denominator in `[1, 6]`.
pub fn small_rational(rng: &mut Rng8) -> BigRational {
    ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

pub fn positive_rational(rng: &mut Rng8) -> BigRational {
    ratio(rng.gen_range(1..=40), rng.gen_range(1..=8))
}

pub fn power(rng: &mut Rng8, lo: i64, hi: i64) -> BigRational {
    pow2(rng.gen_range(lo..=hi))
}

/// A value from a mixed pool: zero, signed powers of two, small and large rationals.
pub fn any_value(rng: &mut Rng8) -> BigRational {
    match rng.gen_range(0..10) {
        0 => BigRational::from_integer(0.into()),
        1 | 2 => power(rng, -6, 6),
        3 => -power(rng, -6, 6),
        4 => ratio(rng.gen_range(-400..=400), rng.gen_range(1..=3)),
        _ => small_rational(rng),
    }
}

pub fn assign(pairs: &[(&str, BigRational)]) -> Assignment {
    pairs.iter().map(|(k, v)| (Name::from(*k), v.clone())).collect()
}

pub fn show(env: &Assignment) -> String {
    env.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}
