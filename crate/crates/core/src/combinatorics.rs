//! Generalized binomial coefficients and nested-ones counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `top (top-1) ... (top-k+1) / k!` for any integer `top`.
///
/// Zero for `0 <= top < k`; for negative `top` the value is
/// `(-1)^k binom(k - top - 1, k)`.
pub fn binom(top: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        // acc = binom(top, i) here, so the division is exact
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `sum_{j=c}^{m} binom(j - c + k, k)`, in closed form `binom(m - c + k + 1, k + 1)`.
/// An empty range (`m < c`) gives 0.
pub fn binom_column_sum(k: u32, m: i64, c: i64) -> BigInt {
    if m < c {
        return BigInt::zero();
    }
    binom(m - c + k as i64 + 1, k + 1)
}

/// The `s`-fold nested sum of 1 with every lower limit `c` and outer upper
/// limit `b`: `binom(b + s - c, s)`. Counts tuples exactly when `b >= c - 1`.
pub fn nested_ones(s: u32, b: i64, c: i64) -> BigInt {
    binom(b + s as i64 - c, s)
}
