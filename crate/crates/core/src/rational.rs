//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Everything numeric in the crate is a [`Rational`]. The textual form is
//! always `"p/q"` in lowest terms, including integers (`"3/1"`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or a bare integer `"p"`. Decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn floor(value: &Rational) -> BigInt {
    value.numer().div_floor(value.denom())
}

pub fn ceil(value: &Rational) -> BigInt {
    -((-value.numer()).div_floor(value.denom()))
}

/// `floor(sqrt(value))` for `value >= 0`.
pub fn floor_sqrt(value: &Rational) -> BigInt {
    assert!(!value.is_negative(), "square root of a negative rational");
    floor(value).sqrt()
}

/// `α/(1-α)`, the preference-to-edge weight ratio. Panics at `α = 1`.
pub fn odds(alpha: &Rational) -> Rational {
    alpha / (Rational::one() - alpha)
}

/// Splits `α` into coprime non-negative integers `(a, b)` with `α = a/(a+b)`.
pub fn alpha_weights(alpha: &Rational) -> (BigInt, BigInt) {
    let a = alpha.numer().clone();
    let b = alpha.denom() - &a;
    (a, b)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with `digits` significant digits, rounding half to even.
/// Trailing zeros after the point are dropped.
pub fn to_decimal(value: &Rational, digits: u32) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= |v| < 10^(e+1)
    let mut exponent: i64 = magnitude.numer().to_string().len() as i64
        - magnitude.denom().to_string().len() as i64;
    let pow = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while pow(exponent) > magnitude {
        exponent -= 1;
    }
    while pow(exponent + 1) <= magnitude {
        exponent += 1;
    }

    let shift = digits as i64 - 1 - exponent;
    let scaled = &magnitude * pow(shift);
    let mut mantissa = round_half_even(&scaled);
    let mut shift = shift;
    if mantissa == num_traits::pow(ten.clone(), digits as usize) {
        mantissa /= &ten;
        shift -= 1;
    }

    let digits_str = mantissa.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{digits_str}{zeros}")
    } else {
        let shift = shift as usize;
        let padded = if digits_str.len() <= shift {
            format!("{}{}", "0".repeat(shift - digits_str.len() + 1), digits_str)
        } else {
            digits_str
        };
        let (whole, frac) = padded.split_at(padded.len() - shift);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            whole.to_string()
        } else {
            format!("{whole}.{frac}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_even(value: &Rational) -> BigInt {
    let lower = floor(value);
    let frac = value - Rational::from_integer(lower.clone());
    let half = rat(1, 2);
    if frac > half || (frac == half && lower.is_odd()) {
        lower + 1
    } else {
        lower
    }
}
