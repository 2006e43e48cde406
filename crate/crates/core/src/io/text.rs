//! `"p/q"` strings for rationals, and serde adapters that use them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serializer;
use serde_json::Value;

type Q = BigRational;

pub fn parse_integer(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not an integer"));
    }
    t.parse::<BigInt>().map_err(|e| format!("{s:?}: {e}"))
}

/// Accepts `"p"` or `"p/q"` with `q != 0`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    match s.split_once('/') {
        None => parse_integer(s).map(Q::from_integer),
        Some((p, q)) => {
            let p = parse_integer(p)?;
            let q = parse_integer(q)?;
            if q.is_zero() {
                return Err(format!("{s:?} has zero denominator"));
            }
            Ok(Q::new(p, q))
        }
    }
}

pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn integer_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(x.to_string()),
    }
}

pub fn rational_value(q: &Q) -> Value {
    if q.is_integer() {
        integer_value(q.numer())
    } else {
        Value::String(format_rational(q))
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }
}

pub mod integer_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(integer_value))
    }
}

pub mod integer {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}
