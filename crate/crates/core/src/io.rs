//! File formats: state and channel JSON, study CSV.
//!
//! Matrices are written as row-major nested arrays of `[re, im]` pairs with
//! 17 significant digits, so every `f64` round-trips exactly.

use crate::capacity::StudyReport;
use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C};
use crate::scalar::Real;
use crate::states::BipartiteState;
use serde_json::Value;
use std::fmt::Write;

fn fmt_number(x: f64) -> String {
    if x == 0.0 {
        // Keeps "-0" out of the files.
        "0.0000000000000000e0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn write_matrix<T: Real>(out: &mut String, m: &CMatrix<T>) {
    out.push('[');
    for i in 0..m.rows() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            let z = m[(i, j)];
            let _ = write!(out, "[{},{}]", fmt_number(z.re.as_f64()), fmt_number(z.im.as_f64()));
        }
        out.push(']');
    }
    out.push(']');
}

pub fn state_to_json<T: Real>(s: &BipartiteState<T>) -> String {
    let mut out = format!("{{\"dA\":{},\"dB\":{},\"rho\":", s.d_a(), s.d_b());
    write_matrix(&mut out, s.rho());
    out.push('}');
    out
}

pub fn channel_to_json<T: Real>(ch: &KrausChannel<T>) -> String {
    let mut out = format!("{{\"dIn\":{},\"dOut\":{},\"kraus\":[", ch.d_in(), ch.d_out());
    for (k, m) in ch.kraus().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write_matrix(&mut out, m);
    }
    out.push_str("]}");
    out
}

fn parse_dim(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|d| d as usize)
        .ok_or_else(|| Error::Parse(format!("missing or non-integer \"{key}\"")))
}

fn parse_matrix<T: Real>(v: &Value) -> Result<CMatrix<T>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let n_rows = rows.len();
    let mut data = Vec::new();
    let mut n_cols = None;
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if *n_cols.get_or_insert(row.len()) != row.len() {
            return Err(Error::Parse("ragged matrix".into()));
        }
        for entry in row {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("matrix entry must be [re, im]".into()))?;
            let part = |x: &Value| x.as_f64().ok_or_else(|| Error::Parse("non-numeric matrix entry".into()));
            data.push(C::new(T::lit(part(&pair[0])?), T::lit(part(&pair[1])?)));
        }
    }
    CMatrix::from_vec(n_rows, n_cols.unwrap_or(0), data).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a state file.
pub fn state_from_json<T: Real>(text: &str) -> Result<BipartiteState<T>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (d_a, d_b) = (parse_dim(&v, "dA")?, parse_dim(&v, "dB")?);
    let rho = parse_matrix(v.get("rho").ok_or_else(|| Error::Parse("missing \"rho\"".into()))?)?;
    BipartiteState::new(d_a, d_b, rho)
}

pub fn channel_from_json<T: Real>(text: &str) -> Result<KrausChannel<T>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (d_in, d_out) = (parse_dim(&v, "dIn")?, parse_dim(&v, "dOut")?);
    let kraus = v
        .get("kraus")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"kraus\" array".into()))?
        .iter()
        .map(parse_matrix)
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(d_in, d_out, kraus)
}

/// One row per trial: `seed,coherent_before,coherent_after,gain`.
pub fn study_csv<T: Real>(report: &StudyReport<T>) -> String {
    let mut out = String::from("seed,coherent_before,coherent_after,gain\n");
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.seed,
            fmt_number(r.coherent_before.as_f64()),
            fmt_number(r.coherent_after.as_f64()),
            fmt_number(r.gain.as_f64())
        );
    }
    out
}
