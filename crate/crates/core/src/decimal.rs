//! Lossless text encoding of big integers and rationals.
//!
//! Integers are plain decimal strings, rationals `"numerator/denominator"`
//! (or just the integer when the denominator is 1). Nothing here passes
//! through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::error::{invalid, Result};

pub fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| invalid(format!("`{s}` is not an integer")))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d == BigInt::from(0) {
                return Err(invalid(format!("`{s}` has a zero denominator")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(parse_int(t)?),
    };
    Ok(parsed)
}

pub fn ints_to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn rationals_to_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn ser_display<T: std::fmt::Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn ser_display_vec<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
