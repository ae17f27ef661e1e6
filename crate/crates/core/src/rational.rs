//! Exact rationals and their JSON encoding.
//!
//! Integers that fit in an `i64` are written as JSON integers; everything
//! else is a string `"p/q"` (or `"p"` for big integers). No floats ever
//! appear in serialized output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use std::fmt;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// `Some(n)` when `x` is an integer that fits in `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_i64_vec(v: &[Q]) -> Option<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Q]) -> BigInt {
    v.iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

pub(crate) fn serialize_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    match to_i64(x) {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&format_q(x)),
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
        Ok(q(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
        Ok(Q::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
        parse_q(v).map_err(E::custom)
    }
}

pub(crate) fn deserialize_q<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    d.deserialize_any(QVisitor)
}

/// `#[serde(with = "crate::rational::vec")]` for `Vec<Q>` fields.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Wrap(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw: Vec<Unwrap> = serde::Deserialize::deserialize(d)?;
        Ok(raw.into_iter().map(|u| u.0).collect())
    }

    struct Wrap<'a>(&'a Q);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize_q(self.0, s)
        }
    }

    struct Unwrap(Q);

    impl<'de> serde::Deserialize<'de> for Unwrap {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            deserialize_q(d).map(Unwrap)
        }
    }
}

/// `#[serde(with = "crate::rational::scalar")]` for single `Q` fields.
pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_q(x, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        deserialize_q(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), q(-4));
        assert_eq!(format_q(&q_frac(-2, 4)), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let v = vec![q_frac(1, 2), q_frac(1, 3), q(5)];
        assert_eq!(common_denominator(&v), BigInt::from(6));
    }
}
