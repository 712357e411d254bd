//! JSON integers of unbounded size, written as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&value.to_string()).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let n = serde_json::Number::deserialize(d)?;
    BigInt::from_str(&n.to_string())
        .map_err(|_| de::Error::custom(format!("expected an integer, got {n}")))
}
