//! Exact rational scalars and their text forms.
//!
//! Values are parsed from integers (`-21`), fractions (`40/3`), or plain
//! decimals (`22.5`), and rendered back as reduced fractions by default.
//! [`overline_decimal`] is the opt-in pretty renderer that marks the repetend
//! with a combining overline (`40/3` → `13.3̄`), for human-facing tables only:
//! machine formats stick to fractions so no value ever round-trips through a
//! float.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::PwlError;

/// Arbitrary-precision rational: always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// The integer `n` as a [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The fraction `p/q` as a [`Rat`]. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Nearest `f64`, for oracle arithmetic and CSV sampling output.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes far beyond any schedule horizon.
        if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY }
    })
}

/// Parses `-3`, `40/3`, `0.25`, or `-13.5` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, PwlError> {
    let s = text.trim();
    let err = || PwlError::ParseNumber(text.to_string());

    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }

    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, digits) = match int_part.as_bytes().first() {
            Some(b'-') => (-1, &int_part[1..]),
            Some(b'+') => (1, &int_part[1..]),
            _ => (1, int_part),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || (digits.is_empty() && frac_part.is_empty())
        {
            return Err(err());
        }
        let int: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
        let frac: BigInt =
            if frac_part.is_empty() { BigInt::zero() } else { frac_part.parse().map_err(|_| err())? };
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let value = Rat::from_integer(int) + Rat::new(frac, scale);
        return Ok(if sign < 0 { -value } else { value });
    }

    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Longest repetend rendered before falling back to the fraction form.
const MAX_REPETEND: usize = 12;

/// Renders `r` as a (possibly repeating) decimal, marking each repeating digit
/// with U+0305 COMBINING OVERLINE: `40/3` → `13.3̄`, `115/6` → `19.16̄`,
/// `19/2` → `9.5`. Falls back to the fraction form when the repetend exceeds
/// [`MAX_REPETEND`] digits.
pub fn overline_decimal(r: &Rat) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().clone();
    let int = &num / &den;
    let mut rem = &num % &den;
    if rem.is_zero() {
        return format!("{sign}{int}");
    }

    let mut digits = String::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let ten = BigInt::from(10);
    loop {
        if rem.is_zero() {
            return format!("{sign}{int}.{digits}");
        }
        if digits.len() > 64 {
            return r.to_string();
        }
        if let Some(&start) = seen.get(&rem) {
            if digits.len() - start > MAX_REPETEND {
                return r.to_string();
            }
            let (prefix, cycle) = digits.split_at(start);
            let marked: String = cycle.chars().flat_map(|c| [c, '\u{305}']).collect();
            return format!("{sign}{int}.{prefix}{marked}");
        }
        seen.insert(rem.clone(), digits.len());
        rem *= &ten;
        let digit = &rem / &den;
        rem %= &den;
        digits.push(char::from(b'0' + digit.to_u8().expect("single decimal digit")));
    }
}
