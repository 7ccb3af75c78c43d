//! Serde helpers for the JSON wire format.
//!
//! Complex numbers are written as `{"re": x, "im": y}`. On input a bare
//! number `x` is also accepted and read as `{"re": x, "im": 0}`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Real(f64),
    Record(ComplexRecord),
}

impl From<Complex64> for ComplexRecord {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexRecord> for Complex64 {
    fn from(r: ComplexRecord) -> Self {
        Complex64::new(r.re, r.im)
    }
}

pub mod complex {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, ser: S) -> Result<S::Ok, S::Error> {
        ComplexRecord::from(*z).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
        Ok(match ComplexInput::deserialize(de)? {
            ComplexInput::Real(x) => Complex64::new(x, 0.0),
            ComplexInput::Record(r) => r.into(),
        })
    }
}

/// Parses a complex scalar from a JSON fragment (`0.5` or `{"re":0,"im":1}`).
pub fn parse_complex(text: &str) -> serde_json::Result<Complex64> {
    #[derive(Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "complex")] Complex64);
    serde_json::from_str::<Wrap>(text).map(|w| w.0)
}
