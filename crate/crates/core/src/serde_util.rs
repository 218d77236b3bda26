//! Serialization helpers shared by the JSON reports.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Exact counts go out as JSON numbers when they fit in `u64` and as
/// decimal strings otherwise.
pub fn count_as_number<S: Serializer>(value: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => ser.serialize_u64(v),
        None => ser.serialize_str(&value.to_string()),
    }
}
