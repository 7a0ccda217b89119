//! Serde helpers for the integer encoding used in every JSON payload:
//! integers above `i64::MAX` (or below `i64::MIN`) travel as decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A JSON-facing `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JsonU64(pub u64);

impl Serialize for JsonU64 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 > i64::MAX as u64 {
            s.serialize_str(&self.0.to_string())
        } else {
            s.serialize_u64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for JsonU64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonU64;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or its decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonU64, E> {
                Ok(JsonU64(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonU64, E> {
                u64::try_from(v)
                    .map(JsonU64)
                    .map_err(|_| E::custom(format!("negative value {v}")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonU64, E> {
                v.parse::<u64>()
                    .map(JsonU64)
                    .map_err(|_| E::custom(format!("not a u64 decimal string: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// A JSON-facing arbitrary precision integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonBigInt(pub BigInt);

impl Serialize for JsonBigInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonBigInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonBigInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or its decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonBigInt, E> {
                Ok(JsonBigInt(v.into()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonBigInt, E> {
                Ok(JsonBigInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonBigInt, E> {
                v.parse::<BigInt>()
                    .map(JsonBigInt)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}
