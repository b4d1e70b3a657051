//! Serde helpers: arbitrary-precision integers are written as JSON numbers
//! and polynomials as their canonical text.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::ring::LaurentPoly;

pub fn number(n: &BigInt) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("integer literal is a JSON number")
}

pub fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&number(n), s)
}

pub fn opt_bigint<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => bigint(n, s),
        None => s.serialize_none(),
    }
}

pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&number(n))?;
    }
    seq.end()
}

pub fn poly<S: Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn polys<S: Serializer>(v: &[LaurentPoly], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}
