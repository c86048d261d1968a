//! JSON documents: `MatrixFile`, `CoordsFile` and the Ritz document.
//!
//! Complex entries are written as `[re, im]` with 17 significant digits;
//! on input a bare real number is also accepted.

use std::str::FromStr;

use ritz_fibre::coords::FiberCoords;
use ritz_fibre::fiber::RitzData;
use ritz_fibre::{ComplexMatrix, Tolerances, C64};
use serde_json::{json, Map, Number, Value};

use crate::CliError;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

/// A float as a JSON number with 17 significant digits; JSON has no
/// spelling for infinities or NaN, so those are a numerical failure.
pub fn number(v: f64) -> Result<Value, CliError> {
    if !v.is_finite() {
        return Err(CliError::Lib(ritz_fibre::Error::Numerical(format!("non-finite result {v}"))));
    }
    let s = format!("{v:.16e}");
    Ok(Value::Number(Number::from_str(&s).expect("formatted float is a JSON number")))
}

pub fn complex(z: C64) -> Result<Value, CliError> {
    Ok(json!([number(z.re)?, number(z.im)?]))
}

pub fn complex_vec(v: &[C64]) -> Result<Value, CliError> {
    v.iter().map(|&z| complex(z)).collect::<Result<_, _>>().map(Value::Array)
}

pub fn complex_levels(levels: &[Vec<C64>]) -> Result<Value, CliError> {
    levels.iter().map(|l| complex_vec(l)).collect::<Result<_, _>>().map(Value::Array)
}

pub fn matrix(x: &ComplexMatrix) -> Result<Map<String, Value>, CliError> {
    let mut m = Map::new();
    m.insert("n".into(), json!(x.rows()));
    m.insert("entries".into(), complex_levels(&x.to_rows())?);
    Ok(m)
}

pub fn ritz(r: &RitzData) -> Result<Map<String, Value>, CliError> {
    let mut m = Map::new();
    m.insert("ritz".into(), complex_levels(r.levels())?);
    Ok(m)
}

pub fn coords(fc: &FiberCoords) -> Result<Map<String, Value>, CliError> {
    let mut m = ritz(fc.ritz())?;
    m.insert("b".into(), complex_levels(fc.b_all())?);
    Ok(m)
}

fn read_f64(v: &Value, what: &str) -> Result<f64, CliError> {
    let x = v.as_f64().ok_or_else(|| parse_err(format!("{what}: expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(parse_err(format!("{what}: non-finite number")));
    }
    Ok(x)
}

pub fn read_complex(v: &Value, what: &str) -> Result<C64, CliError> {
    match v {
        Value::Number(_) => Ok(C64::new(read_f64(v, what)?, 0.0)),
        Value::Array(a) if a.len() == 2 => Ok(C64::new(read_f64(&a[0], what)?, read_f64(&a[1], what)?)),
        _ => Err(parse_err(format!("{what}: expected a number or [re, im], got {v}"))),
    }
}

fn read_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn read_levels(v: &Value, what: &str) -> Result<Vec<Vec<C64>>, CliError> {
    read_array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let name = format!("{what}[{i}]");
            read_array(level, &name)?
                .iter()
                .enumerate()
                .map(|(j, z)| read_complex(z, &format!("{name}[{j}]")))
                .collect()
        })
        .collect()
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

pub fn parse(text: &str) -> Result<Value, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    if !v.is_object() {
        return Err(parse_err("top level must be a JSON object"));
    }
    Ok(v)
}

pub fn is_matrix_file(doc: &Value) -> bool {
    doc.get("entries").is_some()
}

pub fn read_matrix(doc: &Value) -> Result<ComplexMatrix, CliError> {
    let n = field(doc, "n")?
        .as_u64()
        .ok_or_else(|| parse_err("\"n\" must be a positive integer"))? as usize;
    if n == 0 {
        return Err(parse_err("\"n\" must be a positive integer"));
    }
    let rows = read_levels(field(doc, "entries")?, "entries")?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(format!("\"entries\" must be {n} rows of {n} entries")));
    }
    ComplexMatrix::from_rows(&rows).map_err(CliError::Lib)
}

pub fn read_ritz(doc: &Value) -> Result<RitzData, CliError> {
    let levels = read_levels(field(doc, "ritz")?, "ritz")?;
    RitzData::new(levels).map_err(|e| parse_err(format!("\"ritz\": {e}")))
}

pub fn read_coords(doc: &Value, tol: &Tolerances) -> Result<FiberCoords, CliError> {
    let r = read_ritz(doc)?;
    let b = read_levels(field(doc, "b")?, "b")?;
    FiberCoords::new(r, b, tol).map_err(CliError::Lib)
}
