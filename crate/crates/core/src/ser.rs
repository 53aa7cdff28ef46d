//! Serde helpers: big numbers are emitted as decimal strings so that JSON
//! consumers never round them through a double.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::exact_arith::BigRat;

pub(crate) fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub(crate) fn opt_bigint<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn bigrat<S: Serializer>(q: &BigRat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub(crate) fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&n.to_string())?;
    }
    seq.end()
}

pub(crate) fn display<T: std::fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
