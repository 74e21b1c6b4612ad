//! JSON file formats and deterministic rendering.
//!
//! All numeric output goes through `render_json`, which prints floats with
//! 12 significant digits so that repeated runs and runs across platforms
//! produce identical bytes. Objects render with sorted keys (the
//! serde_json default map), arrays in order.
//!
//! File schemas, all single JSON objects:
//!   matrix      {"dim": n, "entries": [[re, im], ...]}  row-major
//!   measure     {"weights": [w1, ...]}
//!   pure state  {"amplitudes": [[re, im], ...]}
//!   bloch       {"x": .., "y": .., "z": ..}
//!   invariants  {"n": n, "fidelities": [[..], ..], "phases": [{"k", "j", "value"}, ..]}
//!   sequence    {"n": n, "rows": [[[re, im], ...], ...]}
//!   campaign    {"kind": .., "dims": [..], "samples": .., "master_seed": .., "tolerance": ..}

use serde::Deserialize;
use serde_json::{json, Value};

use crate::campaign::CampaignConfig;
use crate::linalg::{ComplexMatrix, C64};
use crate::reconstruct::{CanonicalSequence, PhaseEntry, SequenceInvariants};
use crate::state::{BlochVector, DensityMatrix, ProbabilityMeasure, PureState};
use crate::triple::FidelityTriple;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("cannot parse {path}: {detail}")]
    Parse { path: String, detail: String },
    #[error("invalid data in {path}: {detail}")]
    Invalid { path: String, detail: String },
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn read_file(path: &str) -> IoResult<String> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> IoResult<T> {
    serde_json::from_str(text)
        .map_err(|e| IoError::Parse { path: path.into(), detail: e.to_string() })
}

fn invalid(path: &str, err: impl std::fmt::Display) -> IoError {
    IoError::Invalid { path: path.into(), detail: err.to_string() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

pub fn read_matrix(path: &str) -> IoResult<ComplexMatrix> {
    let raw: RawMatrix = parse(path, &read_file(path)?)?;
    let entries = raw.entries.iter().map(|[re, im]| C64::new(*re, *im)).collect();
    ComplexMatrix::from_entries(raw.dim, entries).map_err(|e| invalid(path, e))
}

pub fn read_density(path: &str) -> IoResult<DensityMatrix> {
    DensityMatrix::new(read_matrix(path)?).map_err(|e| invalid(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    weights: Vec<f64>,
}

pub fn read_measure(path: &str) -> IoResult<ProbabilityMeasure> {
    let raw: RawMeasure = parse(path, &read_file(path)?)?;
    ProbabilityMeasure::new(raw.weights).map_err(|e| invalid(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPure {
    amplitudes: Vec<[f64; 2]>,
}

pub fn read_pure(path: &str) -> IoResult<PureState> {
    let raw: RawPure = parse(path, &read_file(path)?)?;
    let amps = raw.amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect();
    PureState::new(amps).map_err(|e| invalid(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBloch {
    x: f64,
    y: f64,
    z: f64,
}

pub fn read_bloch(path: &str) -> IoResult<BlochVector> {
    let raw: RawBloch = parse(path, &read_file(path)?)?;
    BlochVector::new(raw.x, raw.y, raw.z).map_err(|e| invalid(path, e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhaseEntry {
    k: usize,
    j: usize,
    value: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInvariants {
    n: usize,
    fidelities: Vec<Vec<f64>>,
    #[serde(default)]
    phases: Vec<RawPhaseEntry>,
}

pub fn read_invariants(path: &str) -> IoResult<SequenceInvariants> {
    let raw: RawInvariants = parse(path, &read_file(path)?)?;
    if raw.fidelities.len() != raw.n {
        return Err(IoError::Invalid {
            path: path.into(),
            detail: format!(
                "field n is {} but the fidelity matrix has {} rows",
                raw.n,
                raw.fidelities.len()
            ),
        });
    }
    let phases = raw
        .phases
        .iter()
        .map(|p| PhaseEntry { k: p.k, j: p.j, value: p.value })
        .collect();
    SequenceInvariants::new(raw.fidelities, phases).map_err(|e| invalid(path, e))
}

pub fn read_campaign_config(path: &str) -> IoResult<CampaignConfig> {
    parse(path, &read_file(path)?)
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    json!({
        "dim": m.dim(),
        "entries": m.entries().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
    })
}

pub fn pure_to_json(s: &PureState) -> Value {
    json!({
        "amplitudes": s.amplitudes().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
    })
}

pub fn measure_to_json(m: &ProbabilityMeasure) -> Value {
    json!({ "weights": m.weights() })
}

pub fn triple_to_json(f: &FidelityTriple) -> Value {
    json!({ "f12": f.f12(), "f13": f.f13(), "f23": f.f23() })
}

pub fn sequence_to_json(seq: &CanonicalSequence) -> Value {
    json!({
        "n": seq.n(),
        "rows": seq
            .rows()
            .iter()
            .map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn invariants_to_json(inv: &SequenceInvariants) -> Value {
    json!({
        "n": inv.n(),
        "fidelities": inv.fidelities(),
        "phases": inv
            .phases()
            .iter()
            .map(|e| json!({"k": e.k, "j": e.j, "value": e.value}))
            .collect::<Vec<_>>(),
    })
}

/// Formats a float with 12 significant digits: fixed point inside
/// [1e-4, 1e12), scientific outside, and "0.0" for zero.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    if !x.is_finite() {
        return "null".to_string();
    }
    let magnitude = x.abs();
    let exponent = magnitude.log10().floor() as i32;
    if !(-4..12).contains(&exponent) {
        format!("{:.11e}", x)
    } else {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

fn render_into(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                out.push_str(&format_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("strings serialize"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_into(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("strings serialize"));
                out.push(':');
                render_into(item, out);
            }
            out.push('}');
        }
    }
}

/// Deterministic compact rendering: floats at 12 significant digits, object
/// keys in sorted order.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, &mut out);
    out
}

pub fn write_json_file(path: &str, value: &Value) -> IoResult<()> {
    let mut text = render_json(value);
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn float_formatting_pins() {
        assert_eq!(format_f64(0.5), "0.500000000000");
        assert_eq!(format_f64(0.96), "0.960000000000");
        assert_eq!(format_f64(FRAC_PI_4), "0.785398163397");
        assert_eq!(format_f64(0.0), "0.0");
        assert_eq!(format_f64(1.0), "1.00000000000");
        assert_eq!(format_f64(-0.25), "-0.250000000000");
        assert_eq!(format_f64(1e-9), "1.00000000000e-9");
    }

    #[test]
    fn render_is_deterministic_and_sorted() {
        let v = json!({"zeta": 1.0, "alpha": [0.5, 2u64], "mid": {"b": true, "a": null}});
        assert_eq!(
            render_json(&v),
            "{\"alpha\":[0.500000000000,2],\"mid\":{\"a\":null,\"b\":true},\"zeta\":1.00000000000}"
        );
    }

    #[test]
    fn matrix_roundtrip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let path = path.to_str().unwrap();
        let m = ComplexMatrix::from_entries(
            2,
            vec![
                C64::new(0.5, 0.0),
                C64::new(0.1, -0.2),
                C64::new(0.1, 0.2),
                C64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        write_json_file(path, &matrix_to_json(&m)).unwrap();
        let back = read_matrix(path).unwrap();
        assert!(m.max_abs_diff(&back) < 1e-11);
        // and it is a valid density matrix
        assert!(read_density(path).is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, "{\"weights\": [1.0], \"extra\": 3}").unwrap();
        assert!(matches!(
            read_measure(path.to_str().unwrap()),
            Err(IoError::Parse { .. })
        ));
    }

    #[test]
    fn invalid_data_is_reported_with_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        std::fs::write(&path, "{\"weights\": [0.5, 0.4]}").unwrap();
        let err = read_measure(path.to_str().unwrap()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("w.json"), "{msg}");
        assert!(msg.contains("sum"), "{msg}");
    }

    #[test]
    fn invariants_file_with_mismatched_n_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inv.json");
        std::fs::write(&path, "{\"n\": 3, \"fidelities\": [[1.0, 0.5], [0.5, 1.0]]}").unwrap();
        assert!(matches!(
            read_invariants(path.to_str().unwrap()),
            Err(IoError::Invalid { .. })
        ));
    }
}
