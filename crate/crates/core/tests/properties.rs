use proptest::prelude::*;
use qcwidth_core::fvs::{min_fvs_exact, min_fvs_heuristic, Digraph};
use qcwidth_core::layout::{
    cutwidth_of, solve_exact, solve_greedy, vsep_of, Constraints, Graph, Ordering, WidthKind,
};
use qcwidth_core::oracle::{brute_fvs, brute_width};
use qcwidth_core::parity::Parity;
use qcwidth_core::{Angle, Budget};

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..8).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..14).prop_map(move |es| {
            let es: Vec<_> = es.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &es)
        })
    })
}

fn digraph() -> impl Strategy<Value = Digraph> {
    (1usize..9).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..18).prop_map(move |arcs| {
            let mut g = Digraph::new(n);
            for (u, v) in arcs {
                g.add_arc(u, v);
            }
            g
        })
    })
}

fn acyclic_without(g: &Digraph, set: &[usize]) -> bool {
    let mut removed = vec![false; g.len()];
    for &v in set {
        removed[v] = true;
    }
    g.is_acyclic_without(&removed)
}

proptest! {
    #[test]
    fn parity_xor_is_an_involution(a in prop::collection::vec(0usize..200, 0..12),
                                   b in prop::collection::vec(0usize..200, 0..12)) {
        let pa = Parity::from_vars(a);
        let pb = Parity::from_vars(b);
        let mut x = pa.clone();
        x.xor_with(&pb);
        prop_assert_eq!(x.len(), pa.len() + pb.len() - 2 * pa.overlap(&pb));
        x.xor_with(&pb);
        prop_assert_eq!(x, pa);
    }

    #[test]
    fn angle_text_round_trips(n in -40i64..40, d in 1i64..17, k in -3i64..4) {
        let mut a = Angle::pi_frac(n, d);
        for _ in 0..k.abs() {
            a += if k > 0 { Angle::symbol("t") } else { -Angle::symbol("t") };
        }
        let back: Angle = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn vsep_never_exceeds_cutwidth(g in graph(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let f = Ordering::from_order(order).unwrap();
        prop_assert!(vsep_of(&g, &f) <= cutwidth_of(&g, &f));
    }

    #[test]
    fn exact_layout_matches_brute_force(g in graph(), ends in any::<(u8, u8)>(), path in any::<bool>()) {
        let n = g.len();
        let (u, w) = (ends.0 as usize % n, ends.1 as usize % n);
        let kind = if path { WidthKind::Pathwidth } else { WidthKind::Cutwidth };
        let c = if u == w { Constraints::endpoints(Some(u), None) } else { Constraints::endpoints(Some(u), Some(w)) };
        let exact = solve_exact(&g, kind, &c, &Budget::unlimited()).unwrap();
        let greedy = solve_greedy(&g, kind, &c).unwrap();
        let best = brute_width(&g, kind, &c).unwrap();
        prop_assert!(exact.optimal);
        prop_assert_eq!(exact.width, best);
        prop_assert_eq!(kind.width(&g, &exact.ordering), best);
        prop_assert!(greedy.width >= best);
        prop_assert_eq!(exact.ordering.order()[0], u);
        if u != w {
            prop_assert_eq!(*exact.ordering.order().last().unwrap(), w);
        }
    }

    #[test]
    fn fvs_matches_brute_force(g in digraph()) {
        let best = brute_fvs(&g).unwrap();
        let exact = min_fvs_exact(&g, &Budget::unlimited());
        let greedy = min_fvs_heuristic(&g);
        prop_assert!(exact.optimal);
        prop_assert_eq!(&exact.set, &best);
        prop_assert!(acyclic_without(&g, &greedy));
        prop_assert!(greedy.len() >= best.len());
    }
}
