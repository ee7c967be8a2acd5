//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field. Always reduced, denominator positive.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// `(-1)^odd` as a scalar.
pub fn sign(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// `1/k!`
pub fn inv_factorial(k: usize) -> Scalar {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Scalar::new(BigInt::one(), f)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Rejects zero denominators.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = |message: &str| Error::InvalidValue {
        key: text.to_string(),
        message: message.to_string(),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn is_negative(c: &Scalar) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_scalar("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-3").unwrap(), int(-3));
        assert_eq!(parse_scalar(" 6/-4 ").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&ratio(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(inv_factorial(0), int(1));
        assert_eq!(inv_factorial(4), ratio(1, 24));
    }
}
