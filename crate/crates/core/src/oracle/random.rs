//! Seeded generators for test instances.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::Angle;
use crate::circuit::{Circuit, Gate};
use crate::fvs::Digraph;
use crate::gadget::{Event, Gadget, GadgetizedCircuit, HPair};
use crate::layout::Graph;
use crate::parity::{Affine, Parity};
use crate::zx::{EdgeKind, NodeKind, ZxDiagram};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph: each pair joined with probability `p`.
pub fn random_graph<R: Rng>(r: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Each ordered pair (self-loops included) becomes an arc with probability `p`.
pub fn random_digraph<R: Rng>(r: &mut R, n: usize, p: f64) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            let q = if u == v { p / 8.0 } else { p };
            if r.random_bool(q) {
                g.add_arc(u, v);
            }
        }
    }
    g
}

/// Clifford+T circuit with `len` gates drawn uniformly from
/// {H, S, S†, T, T†, X, Z, CNOT, CZ}.
pub fn random_circuit<R: Rng>(r: &mut R, n: usize, len: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for _ in 0..len {
        let q = r.random_range(0..n);
        let k = if n > 1 { r.random_range(0..9) } else { r.random_range(0..7) };
        let g = match k {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::Sdg(q),
            3 => Gate::T(q),
            4 => Gate::Tdg(q),
            5 => Gate::X(q),
            6 => Gate::Z(q),
            _ => {
                let mut t = r.random_range(0..n - 1);
                if t >= q {
                    t += 1;
                }
                if k == 7 {
                    Gate::Cnot(q, t)
                } else {
                    Gate::Cz(q, t)
                }
            }
        };
        c.push(g);
    }
    c
}

/// Random diagram with `spiders` spiders of either colour and phases in
/// multiples of pi/4. Each boundary node hangs off a random spider.
pub fn random_zx<R: Rng>(
    r: &mut R,
    spiders: usize,
    inputs: usize,
    outputs: usize,
    extra_edges: usize,
) -> ZxDiagram {
    assert!(spiders > 0);
    let mut d = ZxDiagram::new();
    let ids: Vec<usize> = (0..spiders)
        .map(|_| {
            let kind = if r.random_bool(0.5) { NodeKind::Z } else { NodeKind::X };
            d.add_spider(kind, Angle::pi_frac(r.random_range(0..8), 4))
        })
        .collect();
    let kind = |r: &mut R| if r.random_bool(0.5) { EdgeKind::Plain } else { EdgeKind::Hadamard };
    // A random spanning tree keeps the diagram in one piece.
    for i in 1..spiders {
        let j = r.random_range(0..i);
        let k = kind(r);
        d.add_edge(ids[j], ids[i], k);
    }
    for _ in 0..extra_edges {
        let a = r.random_range(0..spiders);
        let b = r.random_range(0..spiders);
        let k = kind(r);
        d.add_edge(ids[a], ids[b], k);
    }
    for port in 0..inputs {
        let v = d.add_boundary(NodeKind::Input, port);
        let s = ids[r.random_range(0..spiders)];
        let k = kind(r);
        d.add_edge(v, s, k);
    }
    for port in 0..outputs {
        let v = d.add_boundary(NodeKind::Output, port);
        let s = ids[r.random_range(0..spiders)];
        let k = kind(r);
        d.add_edge(v, s, k);
    }
    d
}

/// Gadget form over `n` input variables with `pairs` Hadamard gadgets and
/// `gadgets` phase gadgets (odd multiples of pi/4) on random subsets of all
/// variables. Pair `a` sides are drawn from the variables live at that point.
/// Every variable gets its own wire.
pub fn random_gadget_form<R: Rng>(r: &mut R, n: usize, pairs: usize, gadgets: usize) -> GadgetizedCircuit {
    let nv = n + pairs;
    let mut live: Vec<usize> = (0..n).collect();
    let mut hp = Vec::new();
    let mut steps: Vec<bool> = (0..pairs).map(|_| true).chain((0..gadgets).map(|_| false)).collect();
    steps.shuffle(r);
    let mut event_order = Vec::new();
    let mut gs = Vec::new();
    for is_pair in steps {
        if is_pair {
            let k = r.random_range(0..live.len());
            let b = n + hp.len();
            event_order.push(Event::Pair(hp.len()));
            hp.push(HPair {
                a: live[k],
                b,
                a_extra: Parity::new(),
            });
            live[k] = b;
        } else {
            let mut p = Parity::new();
            while p.is_empty() {
                for v in 0..nv {
                    if r.random_bool(0.35) {
                        p.flip(v);
                    }
                }
            }
            event_order.push(Event::Gadget(gs.len()));
            gs.push(Gadget {
                parity: p,
                angle: Angle::pi_frac(2 * r.random_range(0..4) + 1, 4),
            });
        }
    }
    live.sort_unstable();
    GadgetizedCircuit {
        num_wires: nv,
        num_vars: nv,
        leading: Vec::new(),
        start_wires: (0..n).collect(),
        birth_extra: vec![Parity::new(); nv],
        gadgets: gs,
        pairs: hp,
        event_order,
        final_map: live.iter().map(|&v| (v, Affine::var(v))).collect(),
        trailing: Vec::new(),
        inputs: (0..n).collect(),
        outputs: live,
    }
}
