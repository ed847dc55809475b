use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` with small integers.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"-3"`, `"7/4"` or `" 2 / -6 "`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Serde glue: rationals travel as strings `"p/q"` (or `"p"`).
pub(crate) mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub(crate) fn from_value(v: &serde_json::Value) -> Result<Rational, String> {
        match v {
            serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Rational::from_integer(i.into())),
                None => Err(format!("non-integer JSON number {n}; use a \"p/q\" string")),
            },
            other => Err(format!("expected rational, got {other}")),
        }
    }

    pub mod seq {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(|r| r.to_string()))
        }
    }

    pub mod rows {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let strs: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                seq.serialize_element(&strs)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            let v: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
            v.iter()
                .map(|row| row.iter().map(from_value).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(de::Error::custom)
        }
    }
}
