//! Exact rational scalars.
//!
//! Everything in the crate is computed over [`Rational`], an arbitrary
//! precision fraction kept in lowest terms with a positive denominator. The
//! canonical text form is always `"num/den"`, with `den` printed even when it
//! is `1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a"`, `"a/b"` or `"-a/b"`. A zero denominator is an error.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalised binomial coefficient `binom(top, k)` for any integer `top`.
pub fn binomial(top: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(top - i);
    }
    Rational::new(num, factorial(k))
}

pub fn pow_rational(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn as_small_integer(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    let n = value.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.to_string().parse().ok()
}

pub fn gcd_normalised(value: &Rational) -> bool {
    value.numer().gcd(value.denom()).is_one() && value.denom().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 3 / -9 ").unwrap(), rat(-1, 3));
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(parse_rational("1/0"), Err(Error::MalformedRational(_))));
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = parse_rational("-10/-4").unwrap();
        assert!(gcd_normalised(&r));
        assert_eq!(r, rat(5, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(-2, 3), int(-4));
        assert_eq!(binomial(0, 0), int(1));
    }
}
