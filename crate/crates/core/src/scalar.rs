//! The numeric abstraction shared by every evaluator.
//!
//! Closed forms, the nested-sum oracles and the sequence engine are written
//! once against [`Scalar`]. Exact verification instantiates them with
//! [`BigRational`] or [`QuadExt`](crate::QuadExt); `f64`/`f32` are supported
//! for quick approximate evaluation.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring element that can be divided when it is a unit.
///
/// The operator impls may panic on division by a non-unit; generic code
/// should go through [`Scalar::checked_inv`] / [`checked_div`] wherever the
/// divisor is not known to be invertible.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Whether `==` decides equality exactly.
    const EXACT: bool;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero(format!("inverse of {self:?}")))
        } else {
            Ok(Self::one() / self.clone())
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

/// `x / y`, failing instead of panicking when `y` is not a unit.
pub fn checked_div<T: Scalar>(x: &T, y: &T) -> Result<T> {
    Ok(x.clone() * y.checked_inv()?)
}

/// `x^e` for any integer `e` by square-and-multiply. `x^0 = 1`, including `0^0`.
pub fn pow<T: Scalar>(x: &T, e: i64) -> Result<T> {
    if e == 0 {
        return Ok(T::one());
    }
    let base = if e < 0 {
        if x.is_zero() {
            return Err(Error::ZeroToNegativePower(e));
        }
        x.checked_inv()?
    } else {
        x.clone()
    };
    Ok(pow_unsigned(base, e.unsigned_abs()))
}

fn pow_unsigned<T: Scalar>(mut base: T, mut e: u64) -> T {
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// `(-1)^k` as a scalar.
pub fn sign<T: Scalar>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
