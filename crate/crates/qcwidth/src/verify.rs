//! Equivalence checking for `qcwidth verify`.

use std::path::Path;

use qcwidth_core::linalg::{distance_up_to_scalar, Matrix};
use qcwidth_core::oracle::branch_matrix;
use qcwidth_core::oracle::sim::corrected_measurements;
use qcwidth_core::zx::{evaluate_tensor, ZxDiagram};
use qcwidth_core::{Circuit, CoreError};

use crate::error::Result;
use crate::formats::{parse_circuit_json, parse_diagram_json, parse_qc, read_text};

/// Default width cap for dense simulation.
pub const DEFAULT_CAP: usize = 12;
/// At most this many corrected measurements per circuit are enumerated.
pub const MAX_BRANCH_BITS: usize = 14;
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum Input {
    Circuit(Circuit),
    Diagram(ZxDiagram),
}

/// Reads a circuit (`.qc` or JSON) or a diagram (JSON with `nodes`).
pub fn read_input(path: &Path) -> Result<Input> {
    let text = read_text(path)?;
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if !json {
        return Ok(Input::Circuit(parse_qc(&text)?));
    }
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("nodes").is_some() {
        Ok(Input::Diagram(parse_diagram_json(&text)?))
    } else {
        Ok(Input::Circuit(parse_circuit_json(&text)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verdict {
    pub equivalent: bool,
    /// Largest entrywise deviation after normalizing both maps.
    pub deviation: f64,
    pub branches: usize,
}

/// Matrices of every branch of the corrected measurements. Measurements
/// without corrections stay post-selected on 0.
pub fn branches(c: &Circuit, cap: usize) -> Result<Vec<Matrix>> {
    let corrected = corrected_measurements(c);
    if corrected.len() > MAX_BRANCH_BITS {
        return Err(CoreError::CapExceeded {
            what: "corrected measurements",
            needed: corrected.len(),
            cap: MAX_BRANCH_BITS,
        }
        .into());
    }
    let m = c.num_measurements();
    let mut out = Vec::with_capacity(1 << corrected.len());
    for bits in 0u32..1 << corrected.len() {
        let mut o = vec![false; m];
        for (k, &i) in corrected.iter().enumerate() {
            o[i] = bits >> k & 1 == 1;
        }
        out.push(branch_matrix(c, &o, cap)?);
    }
    Ok(out)
}

fn matrices(x: &Input, cap: usize) -> Result<Vec<Matrix>> {
    match x {
        Input::Circuit(c) => branches(c, cap),
        Input::Diagram(d) => Ok(vec![evaluate_tensor(d, 2 * cap)?]),
    }
}

pub fn verify_inputs(a: &Input, b: &Input, cap: usize) -> Result<Verdict> {
    let ma = matrices(a, cap)?;
    let mb = matrices(b, cap)?;
    let reference = &ma[0];
    let mut deviation: f64 = 0.0;
    for m in ma.iter().chain(&mb) {
        deviation = deviation.max(distance_up_to_scalar(reference, m).unwrap_or(f64::INFINITY));
    }
    Ok(Verdict {
        equivalent: deviation < TOLERANCE,
        deviation,
        branches: ma.len() + mb.len(),
    })
}

pub fn verify(a: &Circuit, b: &Circuit, cap: usize) -> Result<Verdict> {
    verify_inputs(&Input::Circuit(a.clone()), &Input::Circuit(b.clone()), cap)
}
