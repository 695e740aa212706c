//! Exact binomial coefficients and integer powers.
//!
//! Binomials are zero-extended: `C(n, k) = 0` for `k < 0` and for `k > n`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)` with zero extension outside `0..=n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    if let Some(v) = binom_u128(n, k) {
        return BigInt::from(v);
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// Signed-argument form; a negative `n` is a usage error.
pub fn binom_checked(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::out_of_range(format!("binomial top argument must be non-negative (got {n})")));
    }
    Ok(binom(n as u64, k))
}

// Multiplicative formula; every prefix product is itself a binomial so the
// division is exact.
fn binom_u128(n: u64, k: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `base^exp` as an exact integer.
pub fn pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `base^exp` or `None` on u64 overflow.
pub fn pow_u64(base: u64, exp: u64) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

/// `base^exp` saturating at `u64::MAX`.
pub fn pow_saturating(base: u64, exp: u64) -> u64 {
    pow_u64(base, exp).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: count k-subsets of an n-set by enumerating bitmasks.
    fn subset_count(n: u32, k: i64) -> u64 {
        (0u32..(1 << n)).filter(|m| i64::from(m.count_ones()) == k).count() as u64
    }

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(4, 7), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(12, 6), BigInt::from(924));
    }

    #[test]
    fn matches_subset_enumeration() {
        for n in 0..=12u32 {
            for k in -2..=14i64 {
                assert_eq!(binom(n as u64, k), BigInt::from(subset_count(n, k)), "C({n},{k})");
            }
        }
    }

    #[test]
    fn large_values_are_exact() {
        let expected: BigInt = "98913082887808032681188722800".parse().unwrap();
        assert_eq!(binom(100, 49), expected);
        let expected: BigInt =
            "297242911333923795640059429176065863139989673213703918037987737481286092000".parse().unwrap();
        assert_eq!(binom(1000, 42), expected);
    }

    #[test]
    fn row_sums_are_powers_of_two() {
        for n in 0..=30u64 {
            let sum: BigInt = (0..=n as i64).map(|k| binom(n, k)).sum();
            assert_eq!(sum, pow(2, n));
        }
    }

    #[test]
    fn negative_top_is_rejected() {
        assert!(binom_checked(-1, 0).is_err());
        assert_eq!(binom_checked(6, 3).unwrap(), BigInt::from(20));
    }

    #[test]
    fn pascal_recurrence_with_zero_extension() {
        for n in 1..=40u64 {
            for k in -3..=(n as i64 + 3) {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn powers() {
        assert_eq!(pow(3, 4), BigInt::from(81));
        assert_eq!(pow_u64(2, 64), None);
        assert_eq!(pow_u64(2, 63), Some(1 << 63));
        assert_eq!(pow_saturating(10, 30), u64::MAX);
    }
}
