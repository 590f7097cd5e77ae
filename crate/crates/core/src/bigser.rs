//! Serde helpers for big integers: machine-sized values are written as JSON
//! numbers, larger ones as decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Big(pub BigInt);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct BigVisitor;

impl<'de> Visitor<'de> for BigVisitor {
    type Value = Big;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Big, E> {
        Ok(Big(v.into()))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Big, E> {
        Ok(Big(v.into()))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<Big, E> {
        let t = v.trim();
        let ok = !t.is_empty()
            && t.strip_prefix('-').unwrap_or(t).bytes().all(|b| b.is_ascii_digit())
            && t != "-";
        if !ok {
            return Err(E::custom(format!("invalid integer string `{v}`")));
        }
        t.parse::<BigInt>().map(Big).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(BigVisitor)
    }
}

pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x.clone()))?;
    }
    seq.end()
}

pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<BigInt>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a sequence of integers")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(Big(x)) = seq.next_element()? {
                out.push(x);
            }
            Ok(out)
        }
    }
    d.deserialize_seq(V)
}

pub fn serialize_one<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    Big(v.clone()).serialize(s)
}

pub fn deserialize_one<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    Big::deserialize(d).map(|b| b.0)
}
