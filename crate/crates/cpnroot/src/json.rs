//! Serde helpers: big integers travel as decimal strings so that consumers
//! with 64-bit number types cannot silently truncate them.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A big integer that serializes as a decimal string and also accepts a JSON
/// number on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalInt(pub BigInt);

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Signed(i64),
            Unsigned(u64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => t
                .trim()
                .parse::<BigInt>()
                .map(DecimalInt)
                .map_err(|e| D::Error::custom(format!("bad integer {t:?}: {e}"))),
            Raw::Signed(v) => Ok(DecimalInt(v.into())),
            Raw::Unsigned(v) => Ok(DecimalInt(v.into())),
        }
    }
}

pub fn to_decimal(v: &[BigInt]) -> Vec<DecimalInt> {
    v.iter().cloned().map(DecimalInt).collect()
}

pub fn from_decimal(v: Vec<DecimalInt>) -> Vec<BigInt> {
    v.into_iter().map(|d| d.0).collect()
}
