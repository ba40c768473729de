//! JSON encodings shared by the library and the CLI.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::interval::ExtValue;

/// Extended real on the wire: a JSON number when the value is an exact
/// double, otherwise the string `"p/q"`; infinities are `"-inf"`/`"+inf"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtJson(pub ExtValue);

impl Serialize for ExtJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            ExtValue::NegInf => s.serialize_str("-inf"),
            ExtValue::PosInf => s.serialize_str("+inf"),
            ExtValue::Finite(q) => match self.0.as_exact_f64() {
                Some(x) if q.is_integer() && x.abs() < 9.0e15 => s.serialize_i64(x as i64),
                Some(x) => s.serialize_f64(x),
                None => s.serialize_str(&format!("{}/{}", q.numer(), q.denom())),
            },
        }
    }
}

impl<'de> Deserialize<'de> for ExtJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        ext_from_value(&v).map(ExtJson).map_err(serde::de::Error::custom)
    }
}

pub fn ext_from_value(v: &Value) -> Result<ExtValue, Error> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ExtValue::int(i))
            } else {
                ExtValue::from_f64(n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}")))?)
            }
        }
        Value::String(s) => ExtValue::parse(s),
        other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
    }
}

pub fn ext_to_value(x: &ExtValue) -> Value {
    serde_json::to_value(ExtJson(x.clone())).expect("serializable")
}

/// Coefficient from a JSON number or `"a/b"` string.
pub fn scalar_from_value(field: Field, v: &Value) -> Result<Scalar, Error> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => field.parse(&n.to_string()),
        },
        Value::String(s) => field.parse(s),
        other => Err(Error::Parse(format!("expected a coefficient, got {other}"))),
    }
}

pub fn field_to_json(field: Field) -> (String, Option<u32>) {
    match field {
        Field::Q => ("Q".into(), None),
        Field::Fp(2) => ("F2".into(), None),
        Field::Fp(p) => ("F_p".into(), Some(p)),
    }
}

/// Reads the `"field"` / `"p"` pair used by the input formats.
pub fn field_from_json(name: Option<&str>, p: Option<u32>) -> Result<Field, Error> {
    match (name.unwrap_or("F2"), p) {
        ("F_p" | "Fp" | "F_P", Some(p)) => Field::prime(p),
        ("F_p" | "Fp" | "F_P", None) => Err(Error::Input("field F_p needs \"p\"".into())),
        (other, _) => other.parse(),
    }
}
