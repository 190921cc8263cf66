//! Exact scalars.
//!
//! Every algebraic routine in the crate is generic over [`Field`], an exact
//! field of characteristic zero. Equality is structural, so a zero test is a
//! plain comparison and no tolerance ever appears.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{Num, One, Signed, Zero};

/// An exact field of characteristic zero.
pub trait Field:
    Num + Signed + Clone + Debug + Display + Eq + Hash + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    /// `numer / denom`; panics when `denom == 0`.
    fn from_frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    /// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
    fn parse_rational(text: &str) -> Option<Self>;

    /// Lowest-terms rendering, `"p/q"` or `"p"` when `q = 1`.
    fn to_rational_string(&self) -> String {
        self.to_string()
    }

    fn half() -> Self {
        Self::from_frac(1, 2)
    }

    /// `(-1)^k` for the parity of `k`.
    fn sign(odd: bool) -> Self {
        if odd {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

fn split_fraction(text: &str) -> Option<(&str, Option<&str>)> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        Some((n, d)) => Some((n.trim(), Some(d.trim()))),
        None => Some((text, None)),
    }
}

impl Field for BigRational {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(BigInt::from(value))
    }

    fn parse_rational(text: &str) -> Option<Self> {
        let (n, d) = split_fraction(text)?;
        let numer: BigInt = n.parse().ok()?;
        let denom: BigInt = match d {
            Some(d) => d.parse().ok()?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return None;
        }
        Some(Ratio::new(numer, denom))
    }
}

impl Field for Rational64 {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn parse_rational(text: &str) -> Option<Self> {
        let (n, d) = split_fraction(text)?;
        let numer: i64 = n.parse().ok()?;
        let denom: i64 = match d {
            Some(d) => d.parse().ok()?,
            None => 1,
        };
        if denom == 0 {
            return None;
        }
        Some(Ratio::new(numer, denom))
    }
}

/// Parity of an integer degree.
pub fn is_odd(degree: i64) -> bool {
    degree.rem_euclid(2) == 1
}
