//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: always in lowest terms,
//! denominator positive, zero stored as 0/1. This module adds the parsing,
//! formatting, and square-detection helpers the rest of the crate needs.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "5", "-3/4", "+7".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {d:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// Integer square root test: Some(r) with r*r = n when n is a perfect square.
pub fn exact_sqrt_biguint(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if one exists.
///
/// A reduced fraction is a square iff numerator and denominator both are
/// (and the sign is nonnegative).
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let rn = exact_sqrt_biguint(num)?;
    let rd = exact_sqrt_biguint(den)?;
    Some(Rational::new(
        BigInt::from_biguint(Sign::Plus, rn),
        BigInt::from_biguint(Sign::Plus, rd),
    ))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_i64(-3));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat_i64(0)), Some(rat_i64(0)));
        assert!(rational_sqrt(&rat_i64(-4)).is_none());
        assert!(rational_sqrt(&rat(2, 1)).is_none());
        assert!(is_rational_square(&rat(49, 1)));
        assert!(!is_rational_square(&rat(1, 3)));
    }
}
