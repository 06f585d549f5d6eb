//! Exact rational scalars and their `"p/q"` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Canonical text form: always `p/q`, e.g. `"0/1"`, `"-3/4"`.
pub fn to_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form for humans: integers without a denominator.
pub fn to_display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        to_text(r)
    }
}

/// Parses `p/q` or a bare integer `p`. Non-reduced input is reduced.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// MV sum on the standard algebra: `min(x + y, 1)`.
pub fn mv_oplus(x: &Rational, y: &Rational) -> Rational {
    let s = x + y;
    if s > Rational::one() {
        Rational::one()
    } else {
        s
    }
}

pub fn mv_neg(x: &Rational) -> Rational {
    Rational::one() - x
}

/// `max(x + y - 1, 0)`.
pub fn mv_odot(x: &Rational, y: &Rational) -> Rational {
    let s = x + y - Rational::one();
    if s.is_negative() {
        Rational::zero()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse(" 6 / -8 ").unwrap(), rat(-3, 4));
        assert_eq!(to_text(&rat(-3, 4)), "-3/4");
        assert_eq!(to_text(&int(0)), "0/1");
        assert_eq!(to_display(&int(1)), "1");
        assert!(parse("1/0").is_err());
        assert!(parse("a/2").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn standard_operations() {
        assert_eq!(mv_oplus(&rat(1, 3), &rat(1, 3)), rat(2, 3));
        assert_eq!(mv_oplus(&rat(3, 4), &rat(3, 4)), int(1));
        assert_eq!(mv_neg(&rat(1, 4)), rat(3, 4));
        assert_eq!(mv_odot(&rat(1, 4), &rat(1, 2)), int(0));
        assert_eq!(mv_odot(&rat(3, 4), &rat(1, 2)), rat(1, 4));
    }
}
