//! Circuit IR over a fixed set of wires.
//!
//! Wires may be measured and then prepared again. A wire is live between
//! its input (or preparation) and its output (or measurement).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::angle::Angle;
use crate::error::CoreError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Rz(usize, Angle),
    Rx(usize, Angle),
    Cnot(usize, usize),
    Cz(usize, usize),
    PrepPlus(usize),
    PrepZero(usize),
    MeasX(usize),
    MeasZ(usize),
    /// Z on `target` if measurement number `outcome` returned 1.
    CtrlZ { outcome: usize, target: usize },
    /// X on `target` if measurement number `outcome` returned 1.
    CtrlX { outcome: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        use Gate::*;
        match *self {
            H(q) | X(q) | Z(q) | S(q) | Sdg(q) | T(q) | Tdg(q) | Rz(q, _) | Rx(q, _) => vec![q],
            PrepPlus(q) | PrepZero(q) | MeasX(q) | MeasZ(q) => vec![q],
            CtrlZ { target, .. } | CtrlX { target, .. } => vec![target],
            Cnot(a, b) | Cz(a, b) => vec![a, b],
        }
    }

    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        use Gate::*;
        match self {
            H(q) => H(f(*q)),
            X(q) => X(f(*q)),
            Z(q) => Z(f(*q)),
            S(q) => S(f(*q)),
            Sdg(q) => Sdg(f(*q)),
            T(q) => T(f(*q)),
            Tdg(q) => Tdg(f(*q)),
            Rz(q, a) => Rz(f(*q), a.clone()),
            Rx(q, a) => Rx(f(*q), a.clone()),
            Cnot(a, b) => Cnot(f(*a), f(*b)),
            Cz(a, b) => Cz(f(*a), f(*b)),
            PrepPlus(q) => PrepPlus(f(*q)),
            PrepZero(q) => PrepZero(f(*q)),
            MeasX(q) => MeasX(f(*q)),
            MeasZ(q) => MeasZ(f(*q)),
            CtrlZ { outcome, target } => CtrlZ {
                outcome: *outcome,
                target: f(*target),
            },
            CtrlX { outcome, target } => CtrlX {
                outcome: *outcome,
                target: f(*target),
            },
        }
    }

    pub fn name(&self) -> &'static str {
        use Gate::*;
        match self {
            H(_) => "H",
            X(_) => "X",
            Z(_) => "Z",
            S(_) => "S",
            Sdg(_) => "Sdg",
            T(_) => "T",
            Tdg(_) => "Tdg",
            Rz(..) => "Rz",
            Rx(..) => "Rx",
            Cnot(..) => "CNOT",
            Cz(..) => "CZ",
            PrepPlus(_) => "PrepPlus",
            PrepZero(_) => "PrepZero",
            MeasX(_) => "MeasX",
            MeasZ(_) => "MeasZ",
            CtrlZ { .. } => "CtrlZ",
            CtrlX { .. } => "CtrlX",
        }
    }

    /// Rotation outside the Clifford group (T, T†, or a non-Clifford angle).
    pub fn is_non_clifford(&self) -> bool {
        match self {
            Gate::T(_) | Gate::Tdg(_) => true,
            Gate::Rz(_, a) | Gate::Rx(_, a) => !a.is_clifford(),
            _ => false,
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, Gate::MeasX(_) | Gate::MeasZ(_))
    }

    pub fn is_preparation(&self) -> bool {
        matches!(self, Gate::PrepPlus(_) | Gate::PrepZero(_))
    }

    /// Diagonal phase in units of pi, for single-qubit Z-axis rotations.
    pub fn z_phase(&self) -> Option<Angle> {
        Some(match self {
            Gate::Z(_) => Angle::pi(),
            Gate::S(_) => Angle::pi_frac(1, 2),
            Gate::Sdg(_) => Angle::pi_frac(3, 2),
            Gate::T(_) => Angle::pi_frac(1, 4),
            Gate::Tdg(_) => Angle::pi_frac(7, 4),
            Gate::Rz(_, a) => a.clone(),
            _ => return None,
        })
    }

    /// Shortest named gate for a Z rotation by `a`.
    pub fn z_rotation(q: usize, a: Angle) -> Option<Gate> {
        let r = a.ratio();
        let g = match r.map(|r| (*r.numer(), *r.denom())) {
            Some((0, _)) => return None,
            Some((1, 1)) => Gate::Z(q),
            Some((1, 2)) => Gate::S(q),
            Some((3, 2)) => Gate::Sdg(q),
            Some((1, 4)) => Gate::T(q),
            Some((7, 4)) => Gate::Tdg(q),
            _ => Gate::Rz(q, a),
        };
        Some(g)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rz(q, a) | Gate::Rx(q, a) => write!(f, "{}({}) {}", self.name(), a, q),
            Gate::CtrlZ { outcome, target } | Gate::CtrlX { outcome, target } => {
                write!(f, "{}[m{}] {}", self.name(), outcome, target)
            }
            _ => {
                write!(f, "{}", self.name())?;
                for q in self.qubits() {
                    write!(f, " {q}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    /// Wire of each logical input, in order.
    pub inputs: Vec<usize>,
    /// Wire of each logical output, in order.
    pub outputs: Vec<usize>,
}

impl Circuit {
    /// `n` wires, each an input and an output.
    pub fn new(n: usize) -> Self {
        Circuit {
            num_qubits: n,
            gates: Vec::new(),
            inputs: (0..n).collect(),
            outputs: (0..n).collect(),
        }
    }

    pub fn push(&mut self, g: Gate) -> &mut Self {
        self.gates.push(g);
        self
    }

    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_non_clifford()).count()
    }

    pub fn num_measurements(&self) -> usize {
        self.gates.iter().filter(|g| g.is_measurement()).count()
    }

    pub fn has_measurements(&self) -> bool {
        self.gates.iter().any(|g| g.is_measurement())
    }

    /// Checks qubit ranges, wire liveness and correction references.
    pub fn validate(&self) -> Result<(), CoreError> {
        let n = self.num_qubits;
        let mut live = vec![false; n];
        for &q in &self.inputs {
            if q >= n {
                return Err(CoreError::InvalidGate {
                    index: 0,
                    reason: format!("input wire {q} out of range"),
                });
            }
            if live[q] {
                return Err(CoreError::InvalidGate {
                    index: 0,
                    reason: format!("wire {q} listed twice as input"),
                });
            }
            live[q] = true;
        }
        let mut measured = 0usize;
        for (index, g) in self.gates.iter().enumerate() {
            let qs = g.qubits();
            for (k, &q) in qs.iter().enumerate() {
                if q >= n {
                    return Err(CoreError::QubitOutOfRange {
                        index,
                        qubit: q,
                        num_qubits: n,
                    });
                }
                if qs[..k].contains(&q) {
                    return Err(CoreError::RepeatedQubit { index, qubit: q });
                }
            }
            match g {
                Gate::PrepPlus(q) | Gate::PrepZero(q) => {
                    if live[*q] {
                        return Err(CoreError::InvalidGate {
                            index,
                            reason: format!("preparation on live wire {q}"),
                        });
                    }
                    live[*q] = true;
                }
                _ => {
                    if let Some(&q) = qs.iter().find(|&&q| !live[q]) {
                        return Err(CoreError::InvalidGate {
                            index,
                            reason: format!("wire {q} is not live"),
                        });
                    }
                    if let Gate::CtrlX { outcome, .. } | Gate::CtrlZ { outcome, .. } = g {
                        if *outcome >= measured {
                            return Err(CoreError::InvalidGate {
                                index,
                                reason: format!("measurement {outcome} has not happened yet"),
                            });
                        }
                    }
                    if g.is_measurement() {
                        live[qs[0]] = false;
                        measured += 1;
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        for &q in &self.outputs {
            if q >= n || !live[q] || seen[q] {
                return Err(CoreError::InvalidGate {
                    index: self.gates.len(),
                    reason: format!("output wire {q} is not a distinct live wire"),
                });
            }
            seen[q] = true;
        }
        if let Some(q) = (0..n).find(|&q| live[q] && !seen[q]) {
            return Err(CoreError::InvalidGate {
                index: self.gates.len(),
                reason: format!("wire {q} is live at the end but is not an output"),
            });
        }
        Ok(())
    }
}

/// Toffoli with controls `a`, `b` and target `c`: 7 T-type gates, 6 CNOTs, 2 H.
pub fn toffoli(a: usize, b: usize, c: usize) -> Vec<Gate> {
    let mut v = vec![Gate::H(c)];
    v.extend(ccz(a, b, c));
    v.push(Gate::H(c));
    v
}

/// Doubly-controlled Z: 7 T-type gates and 6 CNOTs.
pub fn ccz(a: usize, b: usize, c: usize) -> Vec<Gate> {
    use Gate::*;
    vec![
        Cnot(b, c),
        Tdg(c),
        Cnot(a, c),
        T(c),
        Cnot(b, c),
        Tdg(c),
        Cnot(a, c),
        T(b),
        T(c),
        Cnot(a, b),
        T(a),
        Tdg(b),
        Cnot(a, b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toffoli_shape() {
        let v = toffoli(0, 1, 2);
        assert_eq!(v.len(), 15);
        assert_eq!(v.iter().filter(|g| g.is_non_clifford()).count(), 7);
        assert_eq!(v.iter().filter(|g| matches!(g, Gate::Cnot(..))).count(), 6);
        assert_eq!(v.iter().filter(|g| matches!(g, Gate::H(_))).count(), 2);
    }

    #[test]
    fn validate_catches_dead_wires() {
        let mut c = Circuit::new(2);
        c.push(Gate::MeasZ(1)).push(Gate::X(1));
        assert!(c.validate().is_err());
        let mut c = Circuit::new(1);
        c.num_qubits = 2;
        c.push(Gate::PrepPlus(1))
            .push(Gate::Cz(0, 1))
            .push(Gate::MeasX(0))
            .push(Gate::CtrlX { outcome: 0, target: 1 });
        c.outputs = vec![1];
        c.validate().unwrap();
        c.gates.push(Gate::CtrlZ { outcome: 1, target: 1 });
        assert!(c.validate().is_err());
    }

    #[test]
    fn repeated_qubit() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot(1, 1));
        assert_eq!(
            c.validate(),
            Err(CoreError::RepeatedQubit { index: 0, qubit: 1 })
        );
    }
}
