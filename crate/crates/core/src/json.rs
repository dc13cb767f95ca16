//! Big integers as bare JSON numbers in certificates.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n =
            serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(serde::de::Error::custom)
    }
}

pub fn ints<'a, I: IntoIterator<Item = &'a BigInt>>(v: I) -> Vec<JsonInt> {
    v.into_iter().map(JsonInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_integers_are_bare_numbers() {
        let v = JsonInt(num_traits::pow(BigInt::from(-47), 40));
        let s = serde_json::to_string(&v).unwrap();
        assert!(!s.contains('"'));
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
