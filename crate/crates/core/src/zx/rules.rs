//! Semantics-preserving rewrites: spider fusion, identity removal, colour change.

use alloc::vec::Vec;

use super::diagram::{EdgeKind, NodeId, NodeKind, ZxDiagram};
use crate::angle::Angle;

/// Removes self-loops on spiders. A plain loop is dropped; a Hadamard loop
/// adds pi to the phase.
pub fn remove_self_loops(d: &mut ZxDiagram) {
    let mut flips: Vec<NodeId> = Vec::new();
    d.edges_mut().retain(|e| {
        if e.is_loop() {
            if e.kind == EdgeKind::Hadamard {
                flips.push(e.a);
            }
            false
        } else {
            true
        }
    });
    for v in flips {
        d.node_mut(v).phase += Angle::pi();
    }
}

/// Fuses every pair of same-coloured spiders joined by a plain edge, until
/// none is left. Returns the number of fusions.
pub fn fuse_spiders(d: &mut ZxDiagram) -> usize {
    let mut count = 0;
    remove_self_loops(d);
    loop {
        let pick = d.edges().iter().position(|e| {
            e.kind == EdgeKind::Plain
                && !e.is_loop()
                && d.kind(e.a).is_spider()
                && d.kind(e.a) == d.kind(e.b)
        });
        let Some(i) = pick else { break };
        let e = d.edges_mut().remove(i);
        let (keep, gone) = (e.a.min(e.b), e.a.max(e.b));
        let phase = d.node(gone).phase.clone();
        d.node_mut(keep).phase += phase;
        for f in d.edges_mut().iter_mut() {
            if f.a == gone {
                f.a = keep;
            }
            if f.b == gone {
                f.b = keep;
            }
        }
        d.remove_node(gone);
        remove_self_loops(d);
        count += 1;
    }
    count
}

/// Replaces each phase-free spider with exactly two edge ends by a single
/// wire. Returns the number of spiders removed.
pub fn remove_identity_spiders(d: &mut ZxDiagram) -> usize {
    let mut count = 0;
    loop {
        let pick = d.spiders().into_iter().find(|&v| {
            let inc = d.incident(v);
            d.node(v).phase.is_zero() && inc.len() == 2 && !inc.iter().any(|&i| d.edges()[i].is_loop())
        });
        let Some(v) = pick else { break };
        let inc = d.incident(v);
        let (e1, e2) = (d.edges()[inc[0]], d.edges()[inc[1]]);
        let (x, y) = (e1.other(v), e2.other(v));
        d.remove_node(v);
        d.add_edge(x, y, e1.kind.compose(e2.kind));
        remove_self_loops(d);
        count += 1;
    }
    count
}

/// Turns every X spider into a Z spider by toggling its incident edges.
pub fn to_graph_like(d: &mut ZxDiagram) {
    let xs: Vec<NodeId> = d
        .spiders()
        .into_iter()
        .filter(|&v| d.kind(v) == NodeKind::X)
        .collect();
    for &v in &xs {
        d.node_mut(v).kind = NodeKind::Z;
    }
    for e in d.edges_mut().iter_mut() {
        let flips = xs.binary_search(&e.a).is_ok() as u8 + xs.binary_search(&e.b).is_ok() as u8;
        if flips == 1 {
            e.kind = e.kind.toggled();
        }
    }
}

/// Graph-like form with no plain spider-spider edges and no phase-free
/// spiders of degree two.
pub fn simplify(d: &mut ZxDiagram) {
    to_graph_like(d);
    loop {
        let a = fuse_spiders(d);
        let b = remove_identity_spiders(d);
        if a + b == 0 {
            break;
        }
    }
}
