//! Signature graphs of diagrams: the multigraph obtained by forgetting
//! colours, phases and edge types.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::graph::Graph;
use crate::zx::{NodeId, NodeKind, ZxDiagram};

/// A signature edge and the diagram pieces it stands for, listed from its
/// first endpoint to its second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigPath {
    /// Degree-two spiders folded into the edge.
    pub interior: Vec<NodeId>,
    /// Diagram edge indices along the path (one more than `interior`).
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureOptions {
    /// Fold spiders with exactly two distinct neighbours into an edge.
    pub reduce_degree2: bool,
    /// Drop a boundary node whose spider touches no other boundary node of
    /// the same side and put the spider in that side's set instead.
    pub merge_leaves: bool,
}

impl Default for SignatureOptions {
    fn default() -> Self {
        SignatureOptions {
            reduce_degree2: true,
            merge_leaves: true,
        }
    }
}

impl SignatureOptions {
    pub fn raw() -> Self {
        SignatureOptions {
            reduce_degree2: false,
            merge_leaves: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub graph: Graph,
    /// Diagram node behind each vertex.
    pub nodes: Vec<NodeId>,
    /// One path per graph edge, same order as `graph.edges()`.
    pub paths: Vec<SigPath>,
    /// Vertices standing for the inputs, by port.
    pub inputs: Vec<usize>,
    /// Vertices standing for the outputs, by port.
    pub outputs: Vec<usize>,
    /// Boundary node and path for each merged leaf, keyed by the vertex
    /// that replaced it. The path runs from the boundary node to the vertex.
    pub merged: BTreeMap<usize, Vec<(NodeId, SigPath)>>,
}

impl Signature {
    pub fn vertex_of(&self, node: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&v| v == node)
    }
}

pub fn signature(d: &ZxDiagram) -> Signature {
    signature_with(d, SignatureOptions::default())
}

struct Work {
    alive: Vec<bool>,
    /// (u, v, path from u to v)
    edges: Vec<Option<(usize, usize, SigPath)>>,
}

impl Work {
    fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| matches!(&self.edges[i], Some((a, b, _)) if *a == v || *b == v))
            .collect()
    }

    /// Path of edge `i` oriented to start at `from`.
    fn oriented(&self, i: usize, from: usize) -> (usize, SigPath) {
        let (a, b, p) = self.edges[i].clone().unwrap();
        if a == from {
            (b, p)
        } else {
            let mut p = p;
            p.interior.reverse();
            p.edges.reverse();
            (a, p)
        }
    }
}

pub fn signature_with(d: &ZxDiagram, opts: SignatureOptions) -> Signature {
    let ids = d.node_ids();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut w = Work {
        alive: vec![true; ids.len()],
        edges: d
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Some((
                    index[&e.a],
                    index[&e.b],
                    SigPath {
                        interior: Vec::new(),
                        edges: vec![i],
                    },
                ))
            })
            .collect(),
    };
    let is_spider = |i: usize| d.kind(ids[i]).is_spider();
    if opts.reduce_degree2 {
        loop {
            let pick = (0..ids.len()).find(|&v| {
                if !w.alive[v] || !is_spider(v) {
                    return false;
                }
                let inc = w.incident(v);
                if inc.len() != 2 {
                    return false;
                }
                let (x, _) = w.oriented(inc[0], v);
                let (y, _) = w.oriented(inc[1], v);
                x != v && y != v && x != y
            });
            let Some(v) = pick else { break };
            let inc = w.incident(v);
            let (x, px) = w.oriented(inc[0], v);
            let (y, py) = w.oriented(inc[1], v);
            // Path from x through v to y.
            let mut interior: Vec<NodeId> = px.interior.iter().rev().copied().collect();
            interior.push(ids[v]);
            interior.extend(py.interior);
            let mut edges: Vec<usize> = px.edges.iter().rev().copied().collect();
            edges.extend(py.edges);
            w.edges[inc[0]] = None;
            w.edges[inc[1]] = Some((x, y, SigPath { interior, edges }));
            w.alive[v] = false;
        }
    }
    let mut inputs: BTreeMap<usize, usize> = BTreeMap::new();
    let mut outputs: BTreeMap<usize, usize> = BTreeMap::new();
    let mut merged: BTreeMap<usize, Vec<(NodeId, SigPath)>> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        let node = d.node(v);
        match node.kind {
            NodeKind::Input => {
                inputs.insert(node.port, i);
            }
            NodeKind::Output => {
                outputs.insert(node.port, i);
            }
            _ => {}
        }
    }
    if opts.merge_leaves {
        for side in [NodeKind::Input, NodeKind::Output] {
            let ports: Vec<(usize, usize)> = match side {
                NodeKind::Input => inputs.iter().map(|(&p, &v)| (p, v)).collect(),
                _ => outputs.iter().map(|(&p, &v)| (p, v)).collect(),
            };
            for (port, b) in ports {
                let inc = w.incident(b);
                if inc.len() != 1 {
                    continue;
                }
                let (u, path) = w.oriented(inc[0], b);
                if !is_spider(u) {
                    continue;
                }
                let boundary_nbrs = w
                    .incident(u)
                    .iter()
                    .filter(|&&i| d.kind(ids[w.oriented(i, u).0]) == side)
                    .count();
                if boundary_nbrs != 1 {
                    continue;
                }
                w.edges[inc[0]] = None;
                w.alive[b] = false;
                merged.entry(u).or_default().push((ids[b], path));
                match side {
                    NodeKind::Input => inputs.insert(port, u),
                    _ => outputs.insert(port, u),
                };
            }
        }
    }
    let mut new_index = vec![usize::MAX; ids.len()];
    let mut nodes = Vec::new();
    for i in 0..ids.len() {
        if w.alive[i] {
            new_index[i] = nodes.len();
            nodes.push(ids[i]);
        }
    }
    let mut graph = Graph::new(nodes.len());
    let mut paths = Vec::new();
    for (a, b, p) in w.edges.into_iter().flatten() {
        graph.add_edge(new_index[a], new_index[b]);
        paths.push(p);
    }
    Signature {
        graph,
        nodes,
        paths,
        inputs: inputs.values().map(|&v| new_index[v]).collect(),
        outputs: outputs.values().map(|&v| new_index[v]).collect(),
        merged: merged.into_iter().map(|(u, v)| (new_index[u], v)).collect(),
    }
}

/// The graph with all input vertices contracted into one vertex and all
/// output vertices into another. Returns the graph, the vertex map and the
/// two merged vertices (absent when the side is empty).
pub fn merge_boundaries(sig: &Signature) -> (Graph, Vec<usize>, Option<usize>, Option<usize>) {
    let n = sig.graph.len();
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    let mut first = None;
    let mut last = None;
    for v in 0..n {
        let is_in = sig.inputs.contains(&v);
        let is_out = sig.outputs.contains(&v) && !is_in;
        if is_in {
            let u = *first.get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            map[v] = u;
        } else if is_out {
            let u = *last.get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            map[v] = u;
        } else {
            map[v] = next;
            next += 1;
        }
    }
    let mut g = Graph::new(next);
    for &(a, b) in sig.graph.edges() {
        g.add_edge(map[a], map[b]);
    }
    (g, map, first, last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zx::{circuit_to_zx, fuse_spiders};
    use crate::{Circuit, Gate};

    #[test]
    fn cnot_signature() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot(0, 1));
        let d = circuit_to_zx(&c, &[]).unwrap();
        let s = signature(&d);
        assert_eq!(s.graph.len(), 2);
        assert_eq!(s.graph.edges().len(), 1);
        assert_eq!(s.inputs.len(), 2);
        assert_eq!(s.inputs, s.outputs);
        let raw = signature_with(&d, SignatureOptions::raw());
        assert_eq!(raw.graph.len(), 6);
    }

    #[test]
    fn degree_two_chain_folds_into_one_edge() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cnot(0, 1)).push(Gate::T(1)).push(Gate::Cnot(0, 1));
        let mut d = circuit_to_zx(&c, &[]).unwrap();
        fuse_spiders(&mut d);
        let s = signature_with(
            &d,
            SignatureOptions {
                reduce_degree2: true,
                merge_leaves: false,
            },
        );
        let long: Vec<&SigPath> = s.paths.iter().filter(|p| !p.interior.is_empty()).collect();
        assert_eq!(long.len(), 1);
        assert_eq!(long[0].edges.len(), 2);
    }
}
