//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// The fraction `num/den`, normalized. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, lowest terms.
pub fn format_scalar(s: &Scalar) -> String {
    // Ratio's Display already prints the reduced `p/q` or bare `p`.
    s.to_string()
}

/// Parses `"p"`, `"p/q"`, `"-p/q"`. Non-reduced input is normalized.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator in {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a finite decimal such as `"0.125"` or `"-3.5e-2"` into the exact
/// rational it denotes. Only used for approximate-mode inputs.
pub fn parse_decimal(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid decimal {text:?}"));
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i32 + 1 - exp;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::new(all, num_traits::pow(ten, scale as usize))
    } else {
        BigRational::from_integer(all * num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `|s|` as a scalar.
pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert_eq!(format_scalar(&frac(0, 5)), "0");
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse_scalar(" -10 / 4 ").unwrap(), frac(-5, 2));
        assert_eq!(parse_scalar("3/-9").unwrap(), frac(-1, 3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("0.5").is_err());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_decimal("-3.5e-2").unwrap(), frac(-7, 200));
        assert_eq!(parse_decimal("12").unwrap(), int(12));
        assert_eq!(parse_decimal("1.5E2").unwrap(), int(150));
        assert!(parse_decimal(".").is_err());
        assert!(parse_decimal("1..2").is_err());
    }
}
