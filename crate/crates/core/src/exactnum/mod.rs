//! Exact rational arithmetic and the quadratic extension `Q(√D)`.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is numeric equality.

mod quad;

pub use quad::QuadExt;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(x: &BigRational, y: &BigRational, op: ArithOp) -> Result<BigRational> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero(format!("{} / 0", rat_string(x))));
            }
            x / y
        }
    })
}

pub fn rat_pow(x: &BigRational, e: i64) -> Result<BigRational> {
    scalar::pow(x, e)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Serializes as `"num/den"`, always with an explicit denominator.
pub fn rat_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"n"`, `"n/d"` or `"-n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Returns `Some(r)` with `r >= 0` when `x = r^2` for a rational `r`.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&rat(1, 2), &rat(1, 3), ArithOp::Add).unwrap(), rat(5, 6));
        assert_eq!(rat_arith(&rat(7, 5), &rat_int(0), ArithOp::Mul).unwrap(), rat_int(0));
        assert_eq!(rat_arith(&rat(7, 3), &rat(7, 3), ArithOp::Sub).unwrap(), rat_int(0));
        assert!(matches!(rat_arith(&rat(1, 2), &rat_int(0), ArithOp::Div), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn canonical_form() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(rat_string(&rat_int(7)), "7/1");
    }

    #[test]
    fn pow_examples() {
        assert_eq!(rat_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&rat_int(5), 0).unwrap(), rat_int(1));
        assert_eq!(rat_pow(&rat_int(-1), 7).unwrap(), rat_int(-1));
        assert_eq!(rat_pow(&rat_int(0), -3), Err(Error::ZeroToNegativePower(-3)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), rat_int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat_int(5)), None);
        assert_eq!(rational_sqrt(&rat_int(-4)), None);
    }
}
