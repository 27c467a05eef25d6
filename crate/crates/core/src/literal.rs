//! Exact complex literals: `a+bi` with rational (`3/4`) or decimal (`0.25`)
//! parts, e.g. `1/2-3i`, `-0.5`, `2i`, `-i`. Decimals are read exactly.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::CQ;

/// Parses a real rational or decimal number without surrounding whitespace.
pub fn parse_real(text: &str) -> Result<BigRational, String> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() {
        return Err(format!("expected a number, found `{text}`"));
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(num, text)?;
        let den = parse_digits(den, text)?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        BigRational::new(num, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return Err(format!("expected a number, found `{text}`"));
        }
        let int = if int.is_empty() { BigInt::zero() } else { parse_digits(int, text)? };
        let frac_value = if frac.is_empty() { BigInt::zero() } else { parse_digits(frac, text)? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        BigRational::new(int * &scale + frac_value, scale)
    } else {
        BigRational::from_integer(parse_digits(body, text)?)
    };
    Ok(if negative { -value } else { value })
}

fn parse_digits(digits: &str, whole: &str) -> Result<BigInt, String> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed number `{whole}`"));
    }
    digits.parse().map_err(|_| format!("malformed number `{whole}`"))
}

fn parse_imaginary(text: &str) -> Result<BigRational, String> {
    match text {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_real(text),
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`, optionally wrapped in parentheses.
pub fn parse_complex(text: &str) -> Result<CQ, String> {
    let text = text.trim();
    let text = match text.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').ok_or_else(|| format!("unbalanced parenthesis in `{text}`"))?.trim(),
        None => text,
    };
    if text.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(text)?, BigRational::zero()));
    };
    // Split at the last sign that is not the leading one.
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    match split {
        Some(pos) => Ok(Complex::new(parse_real(&body[..pos])?, parse_imaginary(&body[pos..])?)),
        None => Ok(Complex::new(BigRational::zero(), parse_imaginary(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, format_cq};

    #[test]
    fn literal_forms() {
        assert_eq!(parse_complex("1/2-3/4i").unwrap(), cq((1, 2), (-3, 4)));
        assert_eq!(parse_complex("(0+1i)").unwrap(), cq((0, 1), (1, 1)));
        assert_eq!(parse_complex("-i").unwrap(), cq((0, 1), (-1, 1)));
        assert_eq!(parse_complex("2i").unwrap(), cq((0, 1), (2, 1)));
        assert_eq!(parse_complex("-0.25").unwrap(), cq((-1, 4), (0, 1)));
        assert_eq!(parse_complex("1.5+i").unwrap(), cq((3, 2), (1, 1)));
        assert_eq!(parse_complex("-1-i").unwrap(), cq((-1, 1), (-1, 1)));
    }

    #[test]
    fn canonical_rendering_round_trips() {
        for z in [cq((1, 2), (-3, 4)), cq((-7, 1), (0, 1)), cq((0, 1), (5, 3))] {
            assert_eq!(parse_complex(&format_cq(&z)).unwrap(), z);
        }
    }

    #[test]
    fn malformed_literals() {
        for bad in ["", "1/0", "abc", "1..2", "(1+i", "1+2j", "--1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
