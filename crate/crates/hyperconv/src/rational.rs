//! Exact rational scalars.
//!
//! Every weight in the crate is a `Rat` (arbitrary-precision rational) in
//! lowest terms with a positive denominator — `num_rational::BigRational`
//! maintains both invariants on construction.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

/// Renders as `p/q`, or just `p` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal like `0.25` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!("bad decimal {s:?}")));
        }
        let int_part = int_part.trim();
        let negative = int_part.starts_with('-');
        let whole: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad decimal {s:?}")))?
        };
        let frac_num: BigInt = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad decimal {s:?}")))?;
        let den = BigInt::from(10u8).pow(digits.len() as u32);
        let magnitude = whole.abs() * &den + frac_num;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rat::new(signed, den));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    Ok(Rat::from(n))
}

/// Converts a JSON number (integer under `arbitrary_precision`) to `BigInt`.
pub fn json_number_to_bigint(n: &serde_json::Number) -> Result<BigInt> {
    n.as_str()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("expected an integer, got {n}")))
}

pub fn bigint_to_json_number(n: &BigInt) -> serde_json::Number {
    // `arbitrary_precision` keeps the digits verbatim; this cannot fail for
    // a valid integer literal.
    n.to_string()
        .parse()
        .expect("BigInt renders as a valid JSON integer")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3/4", "-7/2", "0", "5", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // Reduction happens on parse.
        assert_eq!(rat_to_string(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(rat_to_string(&parse_rat("6/-4").unwrap()), "-3/2");
    }

    #[test]
    fn parse_decimals_exactly() {
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.2.3").is_err());
    }

    #[test]
    fn json_round_trip_preserves_big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let n = bigint_to_json_number(&big);
        assert_eq!(json_number_to_bigint(&n).unwrap(), big);
    }
}
