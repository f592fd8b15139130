//! Shared JSON encodings for exact integers and rationals.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Rationals in
//! report files use the `"num/den"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

pub(crate) fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub(crate) fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    match IntRepr::deserialize(d)? {
        IntRepr::Int(v) => Ok(BigInt::from(v)),
        IntRepr::Str(s) => s.trim().parse().map_err(de::Error::custom),
    }
}

/// A `BigInt` wrapper carrying the JSON encoding above.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_bigint(d).map(JsonInt)
    }
}

/// Formats a rational as `"num/den"` (denominator always present).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer string.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let den: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if den == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

/// A rational that serializes as a `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalString(pub BigRational);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(RationalString).map_err(de::Error::custom)
    }
}
