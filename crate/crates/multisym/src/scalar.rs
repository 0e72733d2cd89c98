//! Exact scalars: arbitrary-precision rationals.
//!
//! Every linear computation in this crate runs over `Rat`. The type is
//! canonical by construction (coprime numerator/denominator, positive
//! denominator), so equality tests are exact and tolerance-free.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` with an optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>()
        .map_err(|e| Error::Parse(format!("invalid rational {t:?}: {e}")))
}

/// Canonical display: `p/q` with the sign on the numerator, or `p` for integers.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sign of `x` as -1, 0, or 1.
pub fn signum(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "3/4", "-5/8"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(format_rat(&x), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("-4/8").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
    }
}
