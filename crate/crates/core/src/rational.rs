//! Exact rational helpers built on `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type ExactRational = BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d`, panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> BigRational {
    let m = BigInt::one() << (k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

fn bits(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// Largest `k` with `2^k <= q`; requires `q > 0`.
pub fn floor_log2(q: &BigRational) -> i64 {
    debug_assert!(q.is_positive());
    let mut k = bits(q.numer()) - bits(q.denom());
    while &pow2(k) > q {
        k -= 1;
    }
    while &pow2(k + 1) <= q {
        k += 1;
    }
    k
}

/// The largest power of two not exceeding `q`, or 0 when `q <= 0`.
pub fn lambda(q: &BigRational) -> BigRational {
    if q.is_positive() {
        pow2(floor_log2(q))
    } else {
        BigRational::zero()
    }
}

/// `Some(t)` when `q == 2^t`.
pub fn power_exponent(q: &BigRational) -> Option<i64> {
    if !q.is_positive() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let is_pow = |m: &BigInt| {
        let m = m.magnitude();
        m.count_ones() == 1
    };
    if d.is_one() && is_pow(n) {
        Some(bits(n) - 1)
    } else if n.is_one() && is_pow(d) {
        Some(-(bits(d) - 1))
    } else {
        None
    }
}

/// Truth of `D_n(q)`: `q = 2^t` with `n | t`.
pub fn dn_holds(n: u32, q: &BigRational) -> bool {
    match power_exponent(q) {
        Some(t) => t.mod_floor(&(n as i64)) == 0,
        None => false,
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Absolute-value bound helper used by root bounds.
pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(&ratio(13, 2)), int(4));
        assert_eq!(lambda(&int(8)), int(8));
        assert_eq!(lambda(&ratio(3, 8)), ratio(1, 4));
        assert_eq!(lambda(&int(0)), int(0));
        assert_eq!(lambda(&int(-5)), int(0));
        assert_eq!(lambda(&ratio(1, 1024)), ratio(1, 1024));
    }

    #[test]
    fn dn_values() {
        assert!(dn_holds(2, &int(4)));
        assert!(!dn_holds(2, &int(8)));
        assert!(dn_holds(3, &ratio(1, 8)));
        assert!(dn_holds(1, &ratio(1, 2)));
        assert!(!dn_holds(1, &int(6)));
        assert!(!dn_holds(1, &int(-4)));
        assert!(dn_holds(5, &int(1)));
    }

    #[test]
    fn exponent_roundtrip() {
        for k in -70..70 {
            assert_eq!(power_exponent(&pow2(k)), Some(k));
            assert_eq!(floor_log2(&(pow2(k) * ratio(3, 2))), k);
        }
        assert_eq!(power_exponent(&ratio(3, 4)), None);
    }
}
