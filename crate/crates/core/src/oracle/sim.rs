//! Dense state-vector simulation of circuits, one measurement branch at a time.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::CoreError;
use crate::linalg::Matrix;

/// Linear map of `c` from inputs to outputs with every measurement
/// post-selected on the matching entry of `outcomes` (missing entries are 0).
///
/// Wire `q` of a `w`-wire register is bit `w-1-q` of the basis index, so
/// wire 0 is the most significant. Inputs and outputs follow the same rule
/// over the logical order. Measured wires are reset to |0>.
pub fn branch_matrix(c: &Circuit, outcomes: &[bool], cap: usize) -> Result<Matrix, CoreError> {
    c.validate()?;
    let w = c.num_qubits;
    if w > cap {
        return Err(CoreError::CapExceeded {
            what: "simulation",
            needed: w,
            cap,
        });
    }
    let nin = c.inputs.len();
    let nout = c.outputs.len();
    let mut m = Matrix::zeros(1 << nout, 1 << nin);
    for x in 0..1usize << nin {
        let mut idx = 0usize;
        for (i, &q) in c.inputs.iter().enumerate() {
            if x >> (nin - 1 - i) & 1 == 1 {
                idx |= 1 << (w - 1 - q);
            }
        }
        let mut psi = vec![Complex64::new(0.0, 0.0); 1 << w];
        psi[idx] = Complex64::new(1.0, 0.0);
        let mut k = 0usize;
        for g in &c.gates {
            apply(&mut psi, w, g, outcomes, &mut k)?;
        }
        for (i, amp) in psi.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let mut y = 0usize;
            for (j, &q) in c.outputs.iter().enumerate() {
                if i >> (w - 1 - q) & 1 == 1 {
                    y |= 1 << (nout - 1 - j);
                }
            }
            m.set(y, x, m.get(y, x) + amp);
        }
    }
    Ok(m)
}

/// Unitary of a measurement-free circuit.
pub fn circuit_matrix(c: &Circuit, cap: usize) -> Result<Matrix, CoreError> {
    if c.has_measurements() {
        return Err(CoreError::MidCircuitMeasurement);
    }
    branch_matrix(c, &[], cap)
}

fn one(q: usize, w: usize) -> usize {
    1 << (w - 1 - q)
}

fn apply1(psi: &mut [Complex64], w: usize, q: usize, u: [[Complex64; 2]; 2]) {
    let bit = one(q, w);
    for i in 0..psi.len() {
        if i & bit == 0 {
            let (a, b) = (psi[i], psi[i | bit]);
            psi[i] = u[0][0] * a + u[0][1] * b;
            psi[i | bit] = u[1][0] * a + u[1][1] * b;
        }
    }
}

fn phase(psi: &mut [Complex64], w: usize, q: usize, p: Complex64) {
    let bit = one(q, w);
    for (i, z) in psi.iter_mut().enumerate() {
        if i & bit != 0 {
            *z *= p;
        }
    }
}

fn hadamard(psi: &mut [Complex64], w: usize, q: usize) {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    apply1(psi, w, q, [[h, h], [h, -h]]);
}

fn pauli_x(psi: &mut [Complex64], w: usize, q: usize) {
    let bit = one(q, w);
    for i in 0..psi.len() {
        if i & bit == 0 {
            psi.swap(i, i | bit);
        }
    }
}

/// Keeps the component with wire `q` equal to `s`, then resets it to 0.
fn project_reset(psi: &mut [Complex64], w: usize, q: usize, s: bool) {
    let bit = one(q, w);
    for i in 0..psi.len() {
        if i & bit == 0 {
            if s {
                psi[i] = psi[i | bit];
            }
            psi[i | bit] = Complex64::new(0.0, 0.0);
        }
    }
}

fn cis(a: &crate::angle::Angle) -> Result<Complex64, CoreError> {
    Ok(Complex64::cis(a.radians()?))
}

fn apply(
    psi: &mut [Complex64],
    w: usize,
    g: &Gate,
    outcomes: &[bool],
    k: &mut usize,
) -> Result<(), CoreError> {
    let outcome = |m: usize| outcomes.get(m).copied().unwrap_or(false);
    match g {
        Gate::H(q) => hadamard(psi, w, *q),
        Gate::X(q) => pauli_x(psi, w, *q),
        Gate::Rx(q, a) => {
            hadamard(psi, w, *q);
            phase(psi, w, *q, cis(a)?);
            hadamard(psi, w, *q);
        }
        Gate::Cnot(a, b) => {
            let (ba, bb) = (one(*a, w), one(*b, w));
            for i in 0..psi.len() {
                if i & ba != 0 && i & bb == 0 {
                    psi.swap(i, i | bb);
                }
            }
        }
        Gate::Cz(a, b) => {
            let mask = one(*a, w) | one(*b, w);
            for (i, z) in psi.iter_mut().enumerate() {
                if i & mask == mask {
                    *z = -*z;
                }
            }
        }
        Gate::PrepZero(_) => {}
        Gate::PrepPlus(q) => hadamard(psi, w, *q),
        Gate::MeasZ(q) => {
            project_reset(psi, w, *q, outcome(*k));
            *k += 1;
        }
        Gate::MeasX(q) => {
            hadamard(psi, w, *q);
            project_reset(psi, w, *q, outcome(*k));
            *k += 1;
        }
        Gate::CtrlX { outcome: m, target } => {
            if outcome(*m) {
                pauli_x(psi, w, *target);
            }
        }
        Gate::CtrlZ { outcome: m, target } => {
            if outcome(*m) {
                phase(psi, w, *target, Complex64::new(-1.0, 0.0));
            }
        }
        _ => {
            let a = g.z_phase().expect("remaining gates are Z rotations");
            phase(psi, w, g.qubits()[0], cis(&a)?);
        }
    }
    Ok(())
}

/// Measurement indices whose outcome feeds some correction.
pub fn corrected_measurements(c: &Circuit) -> Vec<usize> {
    let mut v: Vec<usize> = c
        .gates
        .iter()
        .filter_map(|g| match g {
            Gate::CtrlX { outcome, .. } | Gate::CtrlZ { outcome, .. } => Some(*outcome),
            _ => None,
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::toffoli;
    use crate::linalg::equal_up_to_scalar;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cnot_then_t() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot(0, 1)).push(Gate::T(1));
        let m = circuit_matrix(&c, 6).unwrap();
        let t = Complex64::cis(core::f64::consts::FRAC_PI_4);
        let mut want = Matrix::zeros(4, 4);
        want.set(0, 0, c64(1.0, 0.0));
        want.set(1, 1, t);
        want.set(3, 2, t);
        want.set(2, 3, c64(1.0, 0.0));
        assert!(equal_up_to_scalar(&m, &want, 1e-12));
    }

    #[test]
    fn toffoli_decomposition_is_exact() {
        let mut c = Circuit::new(3);
        c.gates = toffoli(0, 1, 2);
        let m = circuit_matrix(&c, 6).unwrap();
        let mut want = Matrix::identity(8);
        want.set(6, 6, c64(0.0, 0.0));
        want.set(7, 7, c64(0.0, 0.0));
        want.set(6, 7, c64(1.0, 0.0));
        want.set(7, 6, c64(1.0, 0.0));
        assert!((m.get(0, 0) - c64(1.0, 0.0)).norm() < 1e-12);
        assert!(equal_up_to_scalar(&m, &want, 1e-12));
    }

    #[test]
    fn hadamard_gadget_all_branches() {
        let mut c = Circuit::new(1);
        c.num_qubits = 2;
        c.push(Gate::PrepPlus(1))
            .push(Gate::Cz(0, 1))
            .push(Gate::MeasX(0))
            .push(Gate::CtrlX { outcome: 0, target: 1 });
        c.outputs = vec![1];
        let mut h = Circuit::new(1);
        h.push(Gate::H(0));
        let want = circuit_matrix(&h, 6).unwrap();
        for s in [false, true] {
            let m = branch_matrix(&c, &[s], 6).unwrap();
            assert!(equal_up_to_scalar(&m, &want, 1e-12), "branch {s}");
        }
        // A Z correction on top would be wrong in the s = 1 branch.
        c.push(Gate::CtrlZ { outcome: 0, target: 1 });
        let m = branch_matrix(&c, &[true], 6).unwrap();
        assert!(!equal_up_to_scalar(&m, &want, 1e-6));
    }
}
