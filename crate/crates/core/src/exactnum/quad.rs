use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element `u + v√D` of the quadratic extension over `T`.
///
/// The discriminant travels with the value. Elements built with
/// [`QuadExt::from_base`] carry no discriminant (their surd part is zero) and
/// combine with elements of any extension. Two elements carrying different
/// discriminants never combine: the `checked_*` methods report
/// [`Error::DiscriminantMismatch`], the operators panic.
///
/// When `D` is a perfect square the arithmetic is the formal ring
/// `T[x]/(x^2 - D)`; it has zero divisors and [`Scalar::checked_inv`] rejects
/// them.
#[derive(Clone, Debug)]
pub struct QuadExt<T> {
    rat: T,
    surd: T,
    disc: Option<T>,
}

impl<T: Scalar> QuadExt<T> {
    pub fn new(rat: T, surd: T, disc: T) -> Result<Self> {
        if disc.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        Ok(Self { rat, surd, disc: Some(disc) })
    }

    /// Embeds a base-field value.
    pub fn from_base(rat: T) -> Self {
        Self { rat, surd: T::zero(), disc: None }
    }

    /// `√D` itself.
    pub fn sqrt_of(disc: T) -> Result<Self> {
        Self::new(T::zero(), T::one(), disc)
    }

    pub fn rat_part(&self) -> &T {
        &self.rat
    }

    pub fn surd_part(&self) -> &T {
        &self.surd
    }

    pub fn discriminant(&self) -> Option<&T> {
        self.disc.as_ref()
    }

    pub fn is_base(&self) -> bool {
        self.surd.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn to_base(&self) -> Option<T> {
        self.is_base().then(|| self.rat.clone())
    }

    pub fn conj(&self) -> Self {
        Self { rat: self.rat.clone(), surd: -self.surd.clone(), disc: self.disc.clone() }
    }

    /// `u^2 - v^2 D`.
    pub fn norm(&self) -> T {
        let uu = self.rat.clone() * self.rat.clone();
        match &self.disc {
            Some(d) => uu - self.surd.clone() * self.surd.clone() * d.clone(),
            None => uu,
        }
    }

    fn merged_disc(&self, other: &Self) -> Result<Option<T>> {
        match (&self.disc, &other.disc) {
            (Some(x), Some(y)) if x != y => Err(Error::DiscriminantMismatch),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let disc = self.merged_disc(other)?;
        Ok(Self { rat: self.rat.clone() + other.rat.clone(), surd: self.surd.clone() + other.surd.clone(), disc })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let disc = self.merged_disc(other)?;
        Ok(Self { rat: self.rat.clone() - other.rat.clone(), surd: self.surd.clone() - other.surd.clone(), disc })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let disc = self.merged_disc(other)?;
        let (u1, v1, u2, v2) = (&self.rat, &self.surd, &other.rat, &other.surd);
        let mut rat = u1.clone() * u2.clone();
        if let Some(d) = &disc {
            rat = rat + v1.clone() * v2.clone() * d.clone();
        }
        let surd = u1.clone() * v2.clone() + u2.clone() * v1.clone();
        Ok(Self { rat, surd, disc })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.merged_disc(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    fn scale(&self, k: &T) -> Self {
        Self { rat: self.rat.clone() * k.clone(), surd: self.surd.clone() * k.clone(), disc: self.disc.clone() }
    }
}

impl<T: Scalar> PartialEq for QuadExt<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.surd == other.surd && (self.surd.is_zero() || self.merged_disc(other).is_ok())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for QuadExt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.disc {
            Some(d) => write!(f, "({}) + ({})*sqrt({})", self.rat, self.surd, d),
            None => write!(f, "{}", self.rat),
        }
    }
}

impl<T: Scalar> Add for QuadExt<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("QuadExt addition")
    }
}

impl<T: Scalar> Sub for QuadExt<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("QuadExt subtraction")
    }
}

impl<T: Scalar> Mul for QuadExt<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("QuadExt multiplication")
    }
}

impl<T: Scalar> Div for QuadExt<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("QuadExt division")
    }
}

impl<T: Scalar> Neg for QuadExt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { rat: -self.rat, surd: -self.surd, disc: self.disc }
    }
}

impl<T: Scalar> Zero for QuadExt<T> {
    fn zero() -> Self {
        Self::from_base(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }
}

impl<T: Scalar> One for QuadExt<T> {
    fn one() -> Self {
        Self::from_base(T::one())
    }
}

impl<T: Scalar> Scalar for QuadExt<T> {
    const EXACT: bool = T::EXACT;

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_base(T::from_bigint(n))
    }

    fn checked_inv(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            let what = if self.is_zero() { "zero" } else { "a zero divisor" };
            return Err(Error::DivisionByZero(format!("inverse of {what} in Q(sqrt D)")));
        }
        Ok(self.conj().scale(&(T::one() / norm)))
    }
}
