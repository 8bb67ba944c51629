//! JSON encoding and decoding for every payload the CLI speaks.
//!
//! Scalars are strings in the exact text grammar, matrices are flat
//! row-major arrays of scalar strings, and a block Toeplitz matrix is
//! `{"n":…,"d":…,"blocks":[matrix,…]}` with blocks listed in ascending
//! index order. Serialization goes through `serde_json`'s sorted maps,
//! so equal reports are byte-identical.

use serde_json::{json, Map, Value};

use crate::casestudies::{CaseOutcome, CaseReport};
use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::family::{MaximalityReport, MaximalityVerdict};
use crate::linalg::{ExactMatrix, SubspaceBasis};
use crate::subalgebras::AlgebraSpec;
use crate::toeplitz::{BlockToeplitz, CirculantParam};

pub fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value> {
    value
        .get(name)
        .ok_or_else(|| Error::Invalid(format!("missing field '{name}'")))
}

pub fn usize_field(value: &Value, name: &str) -> Result<usize> {
    field(value, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::Invalid(format!("field '{name}' must be a nonnegative integer")))
}

pub fn str_field<'a>(value: &'a Value, name: &str) -> Result<&'a str> {
    field(value, name)?
        .as_str()
        .ok_or_else(|| Error::Invalid(format!("field '{name}' must be a string")))
}

fn array_field<'a>(value: &'a Value, name: &str) -> Result<&'a [Value]> {
    field(value, name)?
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| Error::Invalid(format!("field '{name}' must be an array")))
}

pub fn scalar_from_json(value: &Value, context: &str) -> Result<GaussianRational> {
    let text = value
        .as_str()
        .ok_or_else(|| Error::Invalid(format!("{context}: scalar entries must be strings")))?;
    text.parse()
        .map_err(|e| Error::Invalid(format!("{context}: {e}")))
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array(m.entries().iter().map(|e| Value::String(e.to_string())).collect())
}

/// Flat row-major array with known shape.
pub fn matrix_from_json(value: &Value, rows: usize, cols: usize, context: &str) -> Result<ExactMatrix> {
    let entries = value
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{context}: matrix must be a flat array")))?;
    if entries.len() != rows * cols {
        return Err(Error::Invalid(format!(
            "{context}: expected {rows}x{cols} = {} entries, got {}",
            rows * cols,
            entries.len()
        )));
    }
    let parsed: Result<Vec<GaussianRational>> =
        entries.iter().map(|e| scalar_from_json(e, context)).collect();
    ExactMatrix::new(rows, cols, parsed?)
}

/// Flat row-major array of a square matrix; the size is inferred.
pub fn square_matrix_from_json(value: &Value, context: &str) -> Result<ExactMatrix> {
    let entries = value
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{context}: matrix must be a flat array")))?;
    let len = entries.len();
    let d = (1..=len).find(|&d| d * d == len).ok_or_else(|| {
        Error::Invalid(format!("{context}: {len} entries do not form a square matrix"))
    })?;
    matrix_from_json(value, d, d, context)
}

pub fn block_toeplitz_to_json(t: &BlockToeplitz) -> Value {
    json!({
        "n": t.n(),
        "d": t.d(),
        "blocks": t.blocks().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn block_toeplitz_from_json(value: &Value) -> Result<BlockToeplitz> {
    let n = usize_field(value, "n")?;
    let d = usize_field(value, "d")?;
    let blocks = array_field(value, "blocks")?;
    if n == 0 || blocks.len() != 2 * n - 1 {
        return Err(Error::Invalid(format!(
            "field 'blocks' must list {} matrices for n = {n}",
            if n == 0 { 0 } else { 2 * n - 1 }
        )));
    }
    let parsed: Result<Vec<ExactMatrix>> = blocks
        .iter()
        .enumerate()
        .map(|(k, b)| matrix_from_json(b, d, d, &format!("blocks[{k}]")))
        .collect();
    BlockToeplitz::from_blocks(n, d, parsed?)
}

pub fn algebra_spec_to_json(spec: &AlgebraSpec) -> Value {
    match spec {
        AlgebraSpec::Diagonal { d } => json!({"kind": "diagonal", "d": d}),
        AlgebraSpec::Circulant { n, alpha } => {
            json!({"kind": "circulant", "n": n, "alpha": alpha.to_string()})
        }
        AlgebraSpec::Schur { sigma, tau } => json!({"kind": "schur", "sigma": sigma, "tau": tau}),
        AlgebraSpec::Polynomial { generator } => {
            json!({"kind": "poly", "M": matrix_to_json(generator)})
        }
        AlgebraSpec::Explicit { d, basis } => json!({
            "kind": "explicit",
            "d": d,
            "basis": basis.iter().map(matrix_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn algebra_spec_from_json(value: &Value) -> Result<AlgebraSpec> {
    let kind = str_field(value, "kind")?;
    let spec = match kind {
        "diagonal" => AlgebraSpec::Diagonal { d: usize_field(value, "d")? },
        "circulant" => AlgebraSpec::Circulant {
            n: usize_field(value, "n")?,
            alpha: str_field(value, "alpha")?
                .parse::<CirculantParam>()
                .map_err(|e| Error::Invalid(format!("field 'alpha': {e}")))?,
        },
        "schur" => AlgebraSpec::Schur {
            sigma: usize_field(value, "sigma")?,
            tau: usize_field(value, "tau")?,
        },
        "poly" => AlgebraSpec::Polynomial {
            generator: square_matrix_from_json(field(value, "M")?, "field 'M'")?,
        },
        "explicit" => {
            let d = usize_field(value, "d")?;
            let basis: Result<Vec<ExactMatrix>> = array_field(value, "basis")?
                .iter()
                .enumerate()
                .map(|(k, b)| matrix_from_json(b, d, d, &format!("basis[{k}]")))
                .collect();
            AlgebraSpec::Explicit { d, basis: basis? }
        }
        other => {
            return Err(Error::Invalid(format!(
                "field 'kind': unknown algebra kind '{other}'"
            )))
        }
    };
    spec.validate()?;
    Ok(spec)
}

pub fn subspace_to_json(basis: &SubspaceBasis) -> Value {
    json!({
        "ambient": basis.ambient(),
        "dim": basis.dim(),
        "vectors": basis
            .vectors()
            .iter()
            .map(|v| Value::Array(v.iter().map(|e| Value::String(e.to_string())).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn case_report_to_json(report: &CaseReport) -> Value {
    let dims: Map<String, Value> = report
        .dims
        .iter()
        .map(|(label, value)| (label.clone(), json!(value)))
        .collect();
    json!({
        "claim": report.claim,
        "verdict": if report.verified { "verified" } else { "refuted" },
        "witness": report
            .witness
            .as_ref()
            .map(block_toeplitz_to_json)
            .unwrap_or(Value::Null),
        "dims": dims,
        "notes": report.notes,
    })
}

pub fn case_outcome_to_json(outcome: &CaseOutcome) -> Value {
    json!({
        "case": outcome.label,
        "all_verified": outcome.all_verified(),
        "reports": outcome.reports.iter().map(case_report_to_json).collect::<Vec<_>>(),
    })
}

pub fn maximality_report_to_json(report: &MaximalityReport) -> Value {
    let (verdict, witness, extension_dim) = match &report.verdict {
        MaximalityVerdict::Maximal => ("maximal", Value::Null, Value::Null),
        MaximalityVerdict::NotMaximal { witness, extension_dim } => (
            "not_maximal",
            block_toeplitz_to_json(witness),
            json!(extension_dim),
        ),
        MaximalityVerdict::Inconclusive { commutant } => {
            ("inconclusive", subspace_to_json(commutant), Value::Null)
        }
    };
    json!({
        "verdict": verdict,
        "family_dim": report.family_dim,
        "commutant_dim": report.commutant_dim,
        "witness": witness,
        "extension_dim": extension_dim,
    })
}
