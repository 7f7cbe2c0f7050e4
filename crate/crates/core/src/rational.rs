//! Exact rational payoffs.
//!
//! Payoffs are arbitrary-precision rationals kept in canonical form
//! (positive denominator, reduced). Textual forms are integers (`-3`),
//! exact decimals (`1.25`) and fractions (`5/4`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses an integer, exact decimal, or `p/q` token.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    if token.is_empty() {
        return Err("empty numeric token".into());
    }
    if let Some((num, den)) = token.split_once('/') {
        let numer = parse_integer(num)?;
        let denom = parse_integer(den)?;
        if denom.is_zero() {
            return Err(format!("zero denominator in `{token}`"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if (whole.is_empty() && frac.is_empty())
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(format!("not a number: `{token}`"));
        }
        let digits = format!("{whole}{frac}");
        let magnitude: BigInt = digits
            .parse()
            .map_err(|_| format!("not a number: `{token}`"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(token).map(Rational::from_integer)
}

fn parse_integer(text: &str) -> Result<BigInt, String> {
    let digits = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a number: `{text}`"));
    }
    text.parse().map_err(|_| format!("not a number: `{text}`"))
}
