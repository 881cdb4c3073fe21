//! JSON encodings shared by the library and the command-line front end.
//!
//! Rationals are written as `[numerator, denominator]` pairs of decimal
//! strings; on input, plain JSON integers and `"a/b"` strings are accepted too.
//! Polynomials are `{"nvars": g, "terms": [[exps, num, den], ...]}`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::linalg::{QMatrix, Rat};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn rat_to_json(x: &Rat) -> Value {
    json!([x.numer().to_string(), x.denom().to_string()])
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("expected an integer, found {n}"))),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| bad(format!("bad integer {s:?}"))),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let n = bigint_from_json(&a[0])?;
            let d = bigint_from_json(&a[1])?;
            if d == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(n, d))
        }
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            rat_from_json(&json!([n.trim(), d.trim()]))
        }
        _ => Ok(Rat::from_integer(bigint_from_json(v)?)),
    }
}

pub fn i64_from_json(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("expected a machine integer, found {v}")))
}

pub fn int_vec_from_json(v: &Value) -> Result<Vec<i64>> {
    v.as_array().ok_or_else(|| bad("expected an integer array"))?.iter().map(i64_from_json).collect()
}

pub fn int_matrix_from_json(v: &Value) -> Result<Vec<Vec<i64>>> {
    v.as_array().ok_or_else(|| bad("expected an integer matrix"))?.iter().map(int_vec_from_json).collect()
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(rat_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| bad("expected a matrix (array of rows)"))?;
    let parsed: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| bad("matrix row must be an array"))?.iter().map(rat_from_json).collect())
        .collect::<Result<_>>()?;
    let c = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != c) {
        return Err(bad("ragged matrix"));
    }
    Ok(QMatrix::from_rows(parsed))
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    p.to_json()
}

pub fn poly_from_json(v: &Value, nvars: usize) -> Result<LaurentPoly> {
    let terms = match v {
        Value::Object(o) => {
            if let Some(n) = o.get("nvars") {
                let n = i64_from_json(n)? as usize;
                if n != nvars {
                    return Err(Error::ArityMismatch { expected: nvars, found: n });
                }
            }
            o.get("terms").ok_or_else(|| bad("polynomial needs \"terms\""))?
        }
        Value::Array(_) => v,
        _ => return Ok(LaurentPoly::constant(nvars, rat_from_json(v)?)),
    };
    let mut out = Vec::new();
    for t in terms.as_array().ok_or_else(|| bad("terms must be an array"))? {
        let t = t.as_array().ok_or_else(|| bad("term must be [exps, num, den] or [exps, coeff]"))?;
        let (e, c) = match t.len() {
            3 => (int_vec_from_json(&t[0])?, rat_from_json(&json!([t[1].clone(), t[2].clone()]))?),
            2 => (int_vec_from_json(&t[0])?, rat_from_json(&t[1])?),
            _ => return Err(bad("term must be [exps, num, den] or [exps, coeff]")),
        };
        out.push((e, c));
    }
    LaurentPoly::from_terms(nvars, out)
}

pub fn laurent_matrix_from_json(v: &Value, nvars: usize, rows: usize, cols: usize) -> Result<LaurentMatrix> {
    let entries = match v {
        Value::Object(o) => o.get("entries").ok_or_else(|| bad("matrix needs \"entries\""))?,
        _ => v,
    };
    let rs = entries.as_array().ok_or_else(|| bad("matrix entries must be an array of rows"))?;
    if rs.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut parsed = Vec::with_capacity(rows);
    for r in rs {
        let r = r.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if r.len() != cols {
            return Err(bad(format!("expected {cols} columns, found {}", r.len())));
        }
        parsed.push(r.iter().map(|p| poly_from_json(p, nvars)).collect::<Result<Vec<_>>>()?);
    }
    if rows == 0 {
        return Ok(LaurentMatrix::zeros(0, cols, nvars));
    }
    if cols == 0 {
        return Ok(LaurentMatrix::zeros(rows, 0, nvars));
    }
    LaurentMatrix::from_rows(nvars, parsed)
}
