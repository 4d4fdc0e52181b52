//! Hadamard gadgets and the gadget form of a circuit.
//!
//! In the gadget form the middle of a circuit is described over boolean
//! variables: one per wire live when the middle starts and one per fresh
//! `|+>` wire. Diagonal gates become phase gadgets on parities of those
//! variables. A Hadamard gadget is a pair that removes variable `a` and
//! starts variable `b`. CNOTs only show up as a change of variables: each
//! pair may need extra variables XORed into `a` before it, and a variable
//! may need extra variables XORed into it when it is born.

mod emit;
mod extract;

pub use emit::{emit, replay};
pub use extract::extract_gadget_form;

use alloc::vec;
use alloc::vec::Vec;

use crate::angle::Angle;
use crate::circuit::{Circuit, Gate};
use crate::error::CoreError;
use crate::parity::{Affine, Parity};

/// `exp(i * angle * parity)` up to a global phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub parity: Parity,
    pub angle: Angle,
}

/// A Hadamard gadget acting on `a XOR a_extra`; afterwards `a` is gone and
/// `b` is live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPair {
    pub a: usize,
    pub b: usize,
    pub a_extra: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Event {
    Gadget(usize),
    Pair(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetizedCircuit {
    /// Wires of the source circuit.
    pub num_wires: usize,
    /// Number of variables; also the wire count of a replay.
    pub num_vars: usize,
    /// Gates before the middle, on source wires.
    pub leading: Vec<Gate>,
    /// Wires live when the middle starts. Wire `w` holds variable `w`
    /// XOR `birth_extra[w]`.
    pub start_wires: Vec<usize>,
    /// Per variable, the variables XORed into its wire when it is born.
    pub birth_extra: Vec<Parity>,
    pub gadgets: Vec<Gadget>,
    pub pairs: Vec<HPair>,
    /// Time order of gadgets and pairs in the source.
    pub event_order: Vec<Event>,
    /// Content of each wire live when the middle ends, by wire.
    pub final_map: Vec<(usize, Affine)>,
    /// Gates after the middle, on source wires.
    pub trailing: Vec<Gate>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl GadgetizedCircuit {
    pub fn pair_of_a(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.num_vars];
        for (j, p) in self.pairs.iter().enumerate() {
            v[p.a] = Some(j);
        }
        v
    }

    pub fn pair_of_b(&self) -> Vec<Option<usize>> {
        let mut v = vec![None; self.num_vars];
        for (j, p) in self.pairs.iter().enumerate() {
            v[p.b] = Some(j);
        }
        v
    }

    pub fn non_clifford_count(&self) -> usize {
        self.gadgets.iter().filter(|g| !g.angle.is_clifford()).count()
    }
}

/// Indices of Hadamard gates with a non-Clifford gate somewhere before
/// and somewhere after them.
pub fn internal_hadamards(c: &Circuit) -> Vec<usize> {
    let first = c.gates.iter().position(|g| g.is_non_clifford());
    let last = c.gates.iter().rposition(|g| g.is_non_clifford());
    match (first, last) {
        (Some(f), Some(l)) => (f + 1..l)
            .filter(|&i| matches!(c.gates[i], Gate::H(_)))
            .collect(),
        _ => Vec::new(),
    }
}

/// Replaces every internal Hadamard by a gadget on a fresh wire:
/// `PrepPlus(b); CZ(a, b); MeasX(a); CtrlX(b)`. Later gates on `a` move to `b`.
///
/// A Z correction is not needed: conditioned on outcome `s` the gadget
/// applies `X^s H`. An internal Hadamard on a wire that still holds a
/// basis state from `PrepZero` is folded into the preparation instead.
pub fn gadgetize_hadamards(c: &Circuit) -> Result<Circuit, CoreError> {
    c.validate()?;
    if c
        .gates
        .iter()
        .any(|g| matches!(g, Gate::MeasX(_) | Gate::CtrlX { .. } | Gate::CtrlZ { .. }))
    {
        return Err(CoreError::MidCircuitMeasurement);
    }
    let internal = internal_hadamards(c);
    let mut wire: Vec<usize> = (0..c.num_qubits).collect();
    // Output index of the PrepZero and of the X gates since, per source wire.
    let mut basis: Vec<Option<(usize, Vec<usize>)>> = vec![None; c.num_qubits];
    let mut out = Circuit {
        num_qubits: c.num_qubits,
        gates: Vec::with_capacity(c.gates.len() + 3 * internal.len()),
        inputs: c.inputs.clone(),
        outputs: Vec::new(),
    };
    let mut measured = 0;
    let mut k = 0;
    for (i, g) in c.gates.iter().enumerate() {
        if internal.get(k) == Some(&i) {
            k += 1;
            let Gate::H(q) = *g else { unreachable!() };
            if let Some((prep, xs)) = basis[q].take() {
                out.gates[prep] = Gate::PrepPlus(wire[q]);
                for x in xs {
                    out.gates[x] = Gate::Z(wire[q]);
                }
                continue;
            }
            let (a, b) = (wire[q], out.num_qubits);
            out.num_qubits += 1;
            out.gates.extend([
                Gate::PrepPlus(b),
                Gate::Cz(a, b),
                Gate::MeasX(a),
                Gate::CtrlX {
                    outcome: measured,
                    target: b,
                },
            ]);
            measured += 1;
            wire[q] = b;
            continue;
        }
        match *g {
            Gate::PrepZero(q) => basis[q] = Some((out.gates.len(), Vec::new())),
            Gate::X(q) => {
                if let Some((_, xs)) = &mut basis[q] {
                    xs.push(out.gates.len());
                }
            }
            _ => {
                for q in g.qubits() {
                    basis[q] = None;
                }
            }
        }
        if g.is_measurement() {
            measured += 1;
        }
        out.gates.push(g.map_qubits(|q| wire[q]));
    }
    out.outputs = c.outputs.iter().map(|&q| wire[q]).collect();
    Ok(out)
}
