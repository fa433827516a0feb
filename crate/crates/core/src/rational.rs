//! Exact rational helpers.
//!
//! Rationals travel through JSON as `"p/q"` strings so that no precision is
//! lost. Integers are written with an explicit `/1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Scales a vector by a positive constant so that its entries become coprime
/// integers. The zero vector is returned unchanged.
pub fn clear_denominators(values: &[Rational]) -> Vec<Rational> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()));
    if gcd.is_zero() {
        return values.to_vec();
    }
    scaled
        .into_iter()
        .map(|v| Rational::from_integer(v / &gcd))
        .collect()
}

/// Exact sum of terms `coefficient / denominator` with small integer parts.
///
/// Terms are bucketed by denominator so that the hot loops only touch
/// machine integers; the rational value is assembled once at the end.
#[derive(Clone, Debug, Default)]
pub struct ReciprocalTally {
    buckets: HashMap<u64, i64>,
}

impl ReciprocalTally {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, coefficient: i64, denominator: u64) {
        *self.buckets.entry(denominator).or_insert(0) += coefficient;
    }

    pub fn merge(&mut self, other: &ReciprocalTally) {
        for (&den, &coef) in &other.buckets {
            self.add(coef, den);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.values().all(|c| *c == 0)
    }

    pub fn to_rational(&self) -> Rational {
        // Sorted so the intermediate values are schedule independent.
        let mut dens: Vec<_> = self.buckets.iter().filter(|(_, c)| **c != 0).collect();
        dens.sort_unstable();
        dens.into_iter().fold(Rational::zero(), |acc, (&den, &coef)| {
            acc + Rational::new(BigInt::from(coef), BigInt::from(den))
        })
    }
}

pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_rational_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(format_rational(&rat(2, 6)), "1/3");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&rat(-1, 6)), "-1/6");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("4/12").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn tally_matches_direct_sum() {
        let mut tally = ReciprocalTally::new();
        tally.add(2, 6);
        tally.add(-1, 12);
        tally.add(1, 6);
        assert_eq!(tally.to_rational(), rat(5, 12));
    }

    #[test]
    fn clears_denominators_with_positive_scale() {
        let v = clear_denominators(&[rat(-1, 3), rat(1, 2), int(0)]);
        assert_eq!(v, vec![int(-2), int(3), int(0)]);
    }
}
