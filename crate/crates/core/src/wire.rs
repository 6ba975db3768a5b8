//! Serde helpers for exact numbers. Rationals are written as `"a/b"` strings;
//! integers as JSON numbers when they fit in `i64`, otherwise as strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(small) => s.serialize_i64(small),
        None => s.collect_str(n),
    }
}

pub fn opt_bigint<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => bigint(n, s),
        None => s.serialize_none(),
    }
}
