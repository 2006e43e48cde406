//! Instance files and textual encodings of exact numbers.

pub mod text;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::exact::IntegerMatrix;
use crate::integer::SearchBox;
use crate::polyhedra::{Instance, PolyError};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Instance(#[from] PolyError),
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// The on-disk description of an instance.
///
/// ```json
/// {"name": "knapsack", "A": [[2, 3]], "b": [5], "c": [1, "0/1"], "box": [2, 1]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub a: Vec<Vec<BigInt>>,
    pub b: Vec<BigInt>,
    pub c: Vec<Q>,
    pub search_box: Option<Vec<i64>>,
}

fn parse_integer(v: &Value, field: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigInt::from(i)),
            None => match n.as_u64() {
                Some(u) => Ok(BigInt::from(u)),
                None => Err(field_err(field, format!("{n} is not an integer"))),
            },
        },
        Value::String(s) => text::parse_integer(s).map_err(|e| field_err(field, e)),
        other => Err(field_err(field, format!("expected an integer, found {other}"))),
    }
}

fn parse_rational_value(v: &Value, field: &str) -> Result<Q, ParseError> {
    match v {
        Value::Number(_) => parse_integer(v, field).map(Q::from_integer),
        Value::String(s) => text::parse_rational(s).map_err(|e| field_err(field, e)),
        other => Err(field_err(
            field,
            format!("expected an integer or \"p/q\", found {other}"),
        )),
    }
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| field_err(field, "expected an array"))
}

impl InstanceFile {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let value: Value = serde_json::from_str(src).map_err(|e| ParseError::Json(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, ParseError> {
        let obj = value
            .as_object()
            .ok_or_else(|| ParseError::Json("top level must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "name" | "A" | "b" | "c" | "box") {
                return Err(field_err(key.clone(), "unknown field"));
            }
        }
        let get = |k: &str| obj.get(k).ok_or_else(|| field_err(k, "missing"));

        let a = array(get("A")?, "A")?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let name = format!("A[{i}]");
                array(row, &name)?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_integer(x, &format!("A[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if a.is_empty() {
            return Err(field_err("A", "must have at least one row"));
        }
        let n = a[0].len();
        if let Some(i) = a.iter().position(|r| r.len() != n) {
            return Err(field_err(format!("A[{i}]"), format!("expected {n} entries")));
        }
        let b = array(get("b")?, "b")?
            .iter()
            .enumerate()
            .map(|(i, x)| parse_integer(x, &format!("b[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if b.len() != a.len() {
            return Err(field_err(
                "b",
                format!("expected {} entries, found {}", a.len(), b.len()),
            ));
        }
        let c = array(get("c")?, "c")?
            .iter()
            .enumerate()
            .map(|(j, x)| parse_rational_value(x, &format!("c[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if c.len() != n {
            return Err(field_err("c", format!("expected {n} entries, found {}", c.len())));
        }
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(field_err("name", "expected a string")),
        };
        let search_box = match obj.get("box") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let upper = array(v, "box")?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let f = format!("box[{j}]");
                        parse_integer(x, &f)?
                            .to_i64()
                            .filter(|u| *u >= 0)
                            .ok_or_else(|| field_err(f, "expected a nonnegative machine integer"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if upper.len() != n {
                    return Err(field_err("box", format!("expected {n} entries, found {}", upper.len())));
                }
                Some(upper)
            }
        };
        Ok(Self {
            name,
            a,
            b,
            c,
            search_box,
        })
    }

    pub fn from_instance(inst: &Instance, name: Option<String>) -> Self {
        Self {
            name,
            a: inst.a().to_rows(),
            b: inst.b().to_vec(),
            c: inst.c().to_vec(),
            search_box: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        obj.insert(
            "A".into(),
            Value::Array(
                self.a
                    .iter()
                    .map(|r| Value::Array(r.iter().map(text::integer_value).collect()))
                    .collect(),
            ),
        );
        obj.insert(
            "b".into(),
            Value::Array(self.b.iter().map(text::integer_value).collect()),
        );
        obj.insert(
            "c".into(),
            Value::Array(self.c.iter().map(text::rational_value).collect()),
        );
        if let Some(bx) = &self.search_box {
            obj.insert("box".into(), Value::Array(bx.iter().map(|&u| Value::from(u)).collect()));
        }
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize")
    }

    pub fn instance(&self) -> Result<Instance, ParseError> {
        let a = IntegerMatrix::from_rows(&self.a).map_err(PolyError::from)?;
        Ok(Instance::new(a, self.b.clone(), self.c.clone())?)
    }

    pub fn search_box(&self) -> Option<SearchBox> {
        self.search_box.clone().map(SearchBox::explicit)
    }
}
