//! Linear layouts of ZX-diagrams.

pub mod graph;
pub mod interval;
pub mod optimize;
pub mod signature;
pub mod solve;

pub use graph::{cutwidth_of, vsep_of, Graph, Ordering};
pub use interval::interval_layout;
pub use optimize::{
    layout_problem, layout_signature, optimize_diagram, prepare_for_layout, reorder_diagram_cutwidth,
    OptimizedDiagram, Reordered,
};
pub use signature::{merge_boundaries, signature, signature_with, SigPath, Signature, SignatureOptions};
pub use solve::{
    solve_cutwidth, solve_exact, solve_greedy, solve_pathwidth, Constraints, Solved, WidthKind,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::linalg::equal_up_to_scalar;
    use crate::oracle::brute_width;
    use crate::oracle::random::{random_circuit, random_zx, rng};
    use crate::oracle::branch_matrix;
    use crate::zx::{circuit_to_zx, evaluate_tensor, zx_to_circuit};

    #[test]
    fn optimized_diagrams_keep_their_meaning() {
        let mut r = rng(3);
        for _ in 0..40 {
            let d = random_zx(&mut r, 6, 2, 2, 3);
            let o = optimize_diagram(&d, true, &Budget::unlimited()).unwrap();
            let a = evaluate_tensor(&d, 12).unwrap();
            let b = evaluate_tensor(&o.diagram, 12).unwrap();
            assert!(equal_up_to_scalar(&a, &b, 1e-9));
            let (g, c) = layout_problem(&o.signature);
            let pw = brute_width(&g, WidthKind::Pathwidth, &c).unwrap();
            assert_eq!(pw, o.pathwidth);
            assert!(o.tracks >= pw && o.tracks <= pw + 1, "{} vs {pw}", o.tracks);
            let cut = o.diagram.max_vertical_cut().unwrap();
            assert!(cut >= pw && cut <= pw + 2);
            let circ = zx_to_circuit(&o.diagram).unwrap();
            assert_eq!(circ.num_qubits, o.tracks);
            let m = branch_matrix(&circ, &[], 12).unwrap();
            assert!(equal_up_to_scalar(&a, &m, 1e-9));
        }
    }

    #[test]
    fn circuits_round_trip_through_the_layout() {
        let mut r = rng(5);
        for _ in 0..30 {
            let c = random_circuit(&mut r, 3, 12);
            let d = circuit_to_zx(&c, &[]).unwrap();
            let o = optimize_diagram(&d, true, &Budget::unlimited()).unwrap();
            let circ = zx_to_circuit(&o.diagram).unwrap();
            let a = branch_matrix(&c, &[], 10).unwrap();
            let b = branch_matrix(&circ, &[], 10).unwrap();
            assert!(equal_up_to_scalar(&a, &b, 1e-9));
            assert!(circ.num_qubits >= 3);
        }
    }

    #[test]
    fn reordering_cut_equals_cutwidth() {
        let mut r = rng(9);
        for _ in 0..40 {
            let d = random_zx(&mut r, 6, 2, 2, 3);
            let o = reorder_diagram_cutwidth(&d, true, &Budget::unlimited()).unwrap();
            assert_eq!(o.diagram.max_vertical_cut().unwrap(), o.width);
            let sig = signature_with(
                &d,
                SignatureOptions {
                    reduce_degree2: true,
                    merge_leaves: false,
                },
            );
            let (mg, _, first, last) = merge_boundaries(&sig);
            let want = brute_width(&mg, WidthKind::Cutwidth, &Constraints::endpoints(first, last)).unwrap();
            assert_eq!(o.width, want);
        }
    }
}
