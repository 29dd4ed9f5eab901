//! JSON documents replacing some of the compiled-in constants.
//!
//! ```json
//! {
//!   "theta_image": { "denominator": 673, "numerators": [[[a0, a1, a2], ...], ...] },
//!   "lambda": [[a0, a1, a2], [b0, b1, b2], [c0, c1, c2]],
//!   "d": [[[a0, a1, a2], ...], ...]
//! }
//! ```
//!
//! Every field is optional. `K`-elements are ascending coordinate triples
//! in `1, α, α²`; `L`-elements are ascending triples of `K`-elements in
//! `1, θ, θ²`; matrices are `[i][j]` for `θ^i u^j`. Rationals are JSON
//! integers or strings `"n"` / `"n/d"`.

use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::constants::{Constants, KMatrix};
use crate::field_tower::{KElem, LElem};
use crate::rational::{int, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum OverrideError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("shape error at {field}: {detail}")]
    Shape { field: String, detail: String },

    #[error("non-rational entry at {field}: {entry}")]
    NonRational { field: String, entry: String },
}

type OResult<T> = std::result::Result<T, OverrideError>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOverride {
    theta_image: Option<Value>,
    lambda: Option<Value>,
    d: Option<Value>,
}

/// Replacement data for `σ̃(θ)`, `λ` and `d`; `None` keeps the default.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ConstantsOverride {
    pub theta_image: Option<KMatrix>,
    pub lambda: Option<LElem>,
    pub d: Option<KMatrix>,
}

impl ConstantsOverride {
    pub fn load(path: &Path) -> OResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| OverrideError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> OResult<Self> {
        let raw: RawOverride = serde_json::from_str(text)?;
        Ok(Self {
            theta_image: raw.theta_image.as_ref().map(theta_image).transpose()?,
            lambda: raw.lambda.as_ref().map(|v| l_elem(v, "lambda")).transpose()?,
            d: raw.d.as_ref().map(|v| k_matrix(v, "d")).transpose()?,
        })
    }

    /// `base` with the overridden fields replaced.
    pub fn apply(&self, base: &Constants) -> Constants {
        Constants {
            theta_image: self.theta_image.clone().unwrap_or_else(|| base.theta_image.clone()),
            lambda: self.lambda.clone().unwrap_or_else(|| base.lambda.clone()),
            d: self.d.clone().unwrap_or_else(|| base.d.clone()),
        }
    }
}

fn shape(field: &str, detail: impl Into<String>) -> OverrideError {
    OverrideError::Shape {
        field: field.to_string(),
        detail: detail.into(),
    }
}

fn array<'a>(v: &'a Value, len: usize, field: &str) -> OResult<&'a [Value]> {
    match v {
        Value::Array(items) if items.len() == len => Ok(items),
        Value::Array(items) => Err(shape(
            field,
            format!("expected {len} entries, found {}", items.len()),
        )),
        other => Err(shape(field, format!("expected an array, found {other}"))),
    }
}

fn rational(v: &Value, field: &str) -> OResult<Rational> {
    let bad = || OverrideError::NonRational {
        field: field.to_string(),
        entry: v.to_string(),
    };
    match v {
        Value::Number(n) => n.as_i64().map(int).ok_or_else(bad),
        Value::String(s) => parse_rational(s).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn k_elem(v: &Value, field: &str) -> OResult<KElem> {
    let items = array(v, 3, field)?;
    let mut coords = Vec::with_capacity(3);
    for (i, item) in items.iter().enumerate() {
        coords.push(rational(item, &format!("{field}[{i}]"))?);
    }
    let coords: [Rational; 3] = coords.try_into().expect("three coordinates");
    Ok(KElem::new(coords))
}

fn l_elem(v: &Value, field: &str) -> OResult<LElem> {
    let items = array(v, 3, field)?;
    let mut coords = Vec::with_capacity(3);
    for (i, item) in items.iter().enumerate() {
        coords.push(k_elem(item, &format!("{field}[{i}]"))?);
    }
    let coords: [KElem; 3] = coords.try_into().expect("three coordinates");
    Ok(LElem::new(coords))
}

fn k_matrix(v: &Value, field: &str) -> OResult<KMatrix> {
    let rows = array(v, 3, field)?;
    let mut out = Vec::with_capacity(3);
    for (i, row) in rows.iter().enumerate() {
        let entries = array(row, 3, &format!("{field}[{i}]"))?;
        let mut parsed = Vec::with_capacity(3);
        for (j, e) in entries.iter().enumerate() {
            parsed.push(k_elem(e, &format!("{field}[{i}][{j}]"))?);
        }
        let parsed: [KElem; 3] = parsed.try_into().expect("three entries");
        out.push(parsed);
    }
    Ok(out.try_into().expect("three rows"))
}

fn theta_image(v: &Value) -> OResult<KMatrix> {
    let Value::Object(map) = v else {
        return Err(shape(
            "theta_image",
            "expected an object with \"numerators\" and optional \"denominator\"",
        ));
    };
    if let Some(key) = map.keys().find(|k| *k != "numerators" && *k != "denominator") {
        return Err(shape("theta_image", format!("unknown key {key:?}")));
    }
    let numerators = map
        .get("numerators")
        .ok_or_else(|| shape("theta_image", "missing \"numerators\""))?;
    let m = k_matrix(numerators, "theta_image.numerators")?;
    let denominator = match map.get("denominator") {
        Some(d) => rational(d, "theta_image.denominator")?,
        None => int(1),
    };
    if denominator.is_zero() {
        return Err(OverrideError::NonRational {
            field: "theta_image.denominator".into(),
            entry: "0".into(),
        });
    }
    let scale = denominator.recip();
    Ok(m.map(|row| row.map(|e| e.scale(&scale))))
}
