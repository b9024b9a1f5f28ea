//! JSON encoding: complex numbers as `[re, im]`, matrices row-major.

use num_complex::Complex;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fundamental::AngleCoordinates;
use crate::linalg::CMatrix;

fn parse_complex(v: &Value) -> Result<Complex<f64>> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64();
            let im = pair[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex::new(re, im)),
                _ => Err(Error::Parse(format!(
                    "complex entry must be [re, im] numbers, got {v}"
                ))),
            }
        }
        Value::Number(x) => Ok(Complex::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
        _ => Err(Error::Parse(format!(
            "complex entry must be [re, im], got {v}"
        ))),
    }
}

/// Accepts either rows of entries `[[[re, im], …], …]` or a flat row-major list
/// `[[re, im], …]` of square length.
pub fn parse_matrix(text: &str) -> Result<CMatrix<f64>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    matrix_from_value(&value)
}

pub fn matrix_from_value(value: &Value) -> Result<CMatrix<f64>> {
    let outer = value
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be a JSON array".into()))?;
    if outer.is_empty() {
        return Err(Error::Parse("matrix is empty".into()));
    }
    let nested = outer.iter().all(|row| {
        row.as_array()
            .map(|r| r.iter().all(|e| e.is_array()))
            .unwrap_or(false)
    }) && outer
        .iter()
        .any(|row| row.as_array().is_some_and(|r| !r.is_empty()));
    if nested {
        let rows = outer.len();
        let mut entries = Vec::with_capacity(rows * rows);
        for row in outer {
            let row = row.as_array().expect("checked above");
            if row.len() != rows {
                return Err(Error::NotSquare {
                    rows,
                    cols: row.len(),
                });
            }
            for e in row {
                entries.push(parse_complex(e)?);
            }
        }
        Ok(CMatrix::from_row_slice(rows, rows, &entries))
    } else {
        let entries = outer
            .iter()
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Parse(format!(
                "flat matrix needs a square number of entries, got {}",
                entries.len()
            )));
        }
        Ok(CMatrix::from_row_slice(n, n, &entries))
    }
}

pub fn matrix_to_value(m: &CMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| {
                Value::Array(
                    (0..m.ncols())
                        .map(|c| complex_to_value(m[(r, c)]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn complex_to_value(z: Complex<f64>) -> Value {
    serde_json::json!([z.re, z.im])
}

/// `{"xi": [...], "phi": [...]}`, range-checked.
pub fn parse_angles(text: &str) -> Result<AngleCoordinates<f64>> {
    let a: AngleCoordinates<f64> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    AngleCoordinates::new(a.xi, a.phi)
}
