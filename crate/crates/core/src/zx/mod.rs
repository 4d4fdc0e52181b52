//! ZX-diagrams: representation, rewrites, evaluation and circuit translation.

pub mod diagram;
pub mod rules;
pub mod tensor;
pub mod translate;

pub use diagram::{Edge, EdgeKind, Node, NodeId, NodeKind, ZxDiagram};
pub use rules::{fuse_spiders, remove_identity_spiders, simplify, to_graph_like};
pub use tensor::evaluate_tensor;
pub use translate::{circuit_to_zx, zx_to_circuit};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::equal_up_to_scalar;
    use crate::oracle::random::{random_circuit, random_zx, rng};
    use crate::oracle::{branch_matrix, circuit_matrix};
    use crate::{Circuit, Gate};

    #[test]
    fn translation_matches_simulation() {
        let mut r = rng(7);
        for _ in 0..40 {
            let c = random_circuit(&mut r, 3, 14);
            let d = circuit_to_zx(&c, &[]).unwrap();
            let a = circuit_matrix(&c, 6).unwrap();
            let b = evaluate_tensor(&d, 12).unwrap();
            assert!(equal_up_to_scalar(&a, &b, 1e-9));
            let back = zx_to_circuit(&d).unwrap();
            assert!(equal_up_to_scalar(&a, &circuit_matrix(&back, 6).unwrap(), 1e-9));
        }
    }

    #[test]
    fn measurement_branches_translate() {
        let mut c = Circuit::new(1);
        c.num_qubits = 2;
        c.push(Gate::T(0))
            .push(Gate::PrepPlus(1))
            .push(Gate::Cz(0, 1))
            .push(Gate::MeasX(0))
            .push(Gate::CtrlX { outcome: 0, target: 1 })
            .push(Gate::T(1));
        c.outputs = alloc::vec![1];
        for s in [false, true] {
            let a = branch_matrix(&c, &[s], 6).unwrap();
            let d = circuit_to_zx(&c, &[s]).unwrap();
            assert!(equal_up_to_scalar(&a, &evaluate_tensor(&d, 12).unwrap(), 1e-9));
        }
        let d = circuit_to_zx(&c, &[]).unwrap();
        let back = zx_to_circuit(&d).unwrap();
        let a = branch_matrix(&c, &[false], 6).unwrap();
        assert!(equal_up_to_scalar(&a, &branch_matrix(&back, &[], 6).unwrap(), 1e-9));
    }

    #[test]
    fn rewrites_preserve_semantics() {
        let mut r = rng(11);
        for _ in 0..60 {
            let d = random_zx(&mut r, 7, 2, 2, 4);
            let before = evaluate_tensor(&d, 12).unwrap();
            let mut e = d.clone();
            to_graph_like(&mut e);
            assert!(equal_up_to_scalar(&before, &evaluate_tensor(&e, 12).unwrap(), 1e-9));
            let mut f = d.clone();
            fuse_spiders(&mut f);
            assert!(equal_up_to_scalar(&before, &evaluate_tensor(&f, 12).unwrap(), 1e-9));
            let mut s = d.clone();
            simplify(&mut s);
            assert!(equal_up_to_scalar(&before, &evaluate_tensor(&s, 12).unwrap(), 1e-9));
            for e in s.edges() {
                let spiders = s.kind(e.a).is_spider() && s.kind(e.b).is_spider();
                assert!(!(spiders && e.kind == EdgeKind::Plain));
            }
        }
    }

    #[test]
    fn vertical_cut_of_a_cnot() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot(0, 1));
        let d = circuit_to_zx(&c, &[]).unwrap();
        assert_eq!(d.max_vertical_cut().unwrap(), 2);
    }
}
