//! Parsing and formatting of exact rationals.
//!
//! Labels and bound values are `BigRational` throughout; nothing in the
//! decision paths ever touches floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Parse a rational written as an integer (`-3`), a decimal (`0.25`) or a
/// fraction (`5/12`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::validation("empty rational"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::validation(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::validation(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::validation(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if frac_part.is_empty() && int_digits.is_empty() {
            return Err(Error::validation(format!("bad decimal {s:?}")));
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::validation(format!("bad decimal {s:?}")));
        }
        let mut digits = String::with_capacity(int_digits.len() + frac_part.len());
        digits.push_str(int_digits);
        digits.push_str(frac_part);
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| Error::validation(format!("bad decimal {s:?}")))?
        };
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(numer * sign, denom));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::validation(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Canonical `p/q` form with the denominator always spelled out,
/// e.g. `480/1` or `3/448`. Used by machine-readable reports.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form: plain integer when the denominator is one, `p/q` otherwise.
pub fn compact_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
