//! ZX-diagrams as multigraphs of spiders and boundary nodes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::angle::Angle;
use crate::error::CoreError;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Z,
    X,
    Input,
    Output,
}

impl NodeKind {
    pub fn is_spider(self) -> bool {
        matches!(self, NodeKind::Z | NodeKind::X)
    }

    pub fn is_boundary(self) -> bool {
        !self.is_spider()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub phase: Angle,
    /// Position among the inputs or outputs; unused for spiders.
    pub port: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

impl EdgeKind {
    pub fn toggled(self) -> Self {
        match self {
            EdgeKind::Plain => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Plain,
        }
    }

    /// Kind of the wire obtained by joining two wires end to end.
    pub fn compose(self, other: EdgeKind) -> Self {
        if self == other {
            EdgeKind::Plain
        } else {
            EdgeKind::Hadamard
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// A diagram with optional layout: a column per node and, for circuit-like
/// diagrams, a row (qubit line) per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZxDiagram {
    nodes: BTreeMap<NodeId, Node>,
    edges: Vec<Edge>,
    next_id: NodeId,
    pub columns: BTreeMap<NodeId, i64>,
    pub rows: BTreeMap<NodeId, usize>,
}

impl ZxDiagram {
    pub fn new() -> Self {
        ZxDiagram::default()
    }

    pub fn add_spider(&mut self, kind: NodeKind, phase: Angle) -> NodeId {
        assert!(kind.is_spider());
        self.insert(Node {
            kind,
            phase,
            port: 0,
        })
    }

    pub fn add_boundary(&mut self, kind: NodeKind, port: usize) -> NodeId {
        assert!(kind.is_boundary());
        self.insert(Node {
            kind,
            phase: Angle::zero(),
            port,
        })
    }

    /// Inserts a node under a caller-chosen id.
    pub fn insert_with_id(&mut self, id: NodeId, node: Node) -> Result<(), CoreError> {
        if self.nodes.contains_key(&id) {
            return Err(CoreError::InvalidDiagram(format!("duplicate node id {id}")));
        }
        self.nodes.insert(id, node);
        self.next_id = self.next_id.max(id + 1);
        Ok(())
    }

    fn insert(&mut self, node: Node) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        self.nodes.insert(id, node);
        id
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, kind: EdgeKind) {
        assert!(self.nodes.contains_key(&a) && self.nodes.contains_key(&b));
        self.edges.push(Edge { a, b, kind });
    }

    pub fn remove_node(&mut self, v: NodeId) {
        self.nodes.remove(&v);
        self.edges.retain(|e| e.a != v && e.b != v);
        self.columns.remove(&v);
        self.rows.remove(&v);
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[&v]
    }

    pub fn node_mut(&mut self, v: NodeId) -> &mut Node {
        self.nodes.get_mut(&v).expect("node exists")
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn kind(&self, v: NodeId) -> NodeKind {
        self.nodes[&v].kind
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().map(|(&k, n)| (k, n))
    }

    pub fn node_ids(&self) -> Vec<NodeId> {
        self.nodes.keys().copied().collect()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_mut(&mut self) -> &mut Vec<Edge> {
        &mut self.edges
    }

    pub fn spiders(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|(_, n)| n.kind.is_spider())
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn num_spiders(&self) -> usize {
        self.nodes.values().filter(|n| n.kind.is_spider()).count()
    }

    fn boundary(&self, kind: NodeKind) -> Vec<NodeId> {
        let mut v: Vec<(usize, NodeId)> = self
            .nodes
            .iter()
            .filter(|(_, n)| n.kind == kind)
            .map(|(&k, n)| (n.port, k))
            .collect();
        v.sort_unstable();
        v.into_iter().map(|(_, k)| k).collect()
    }

    /// Input nodes sorted by port.
    pub fn inputs(&self) -> Vec<NodeId> {
        self.boundary(NodeKind::Input)
    }

    /// Output nodes sorted by port.
    pub fn outputs(&self) -> Vec<NodeId> {
        self.boundary(NodeKind::Output)
    }

    /// Indices of the edges touching `v`; a self-loop appears once.
    pub fn incident(&self, v: NodeId) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].a == v || self.edges[i].b == v)
            .collect()
    }

    /// Edge ends at `v`; a self-loop counts twice.
    pub fn degree(&self, v: NodeId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == v) as usize + (e.b == v) as usize)
            .sum()
    }

    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        self.incident(v).iter().map(|&i| self.edges[i].other(v)).collect()
    }

    /// Boundary nodes have degree one and ports are `0..k` on each side.
    pub fn validate(&self) -> Result<(), CoreError> {
        for e in &self.edges {
            if !self.contains(e.a) || !self.contains(e.b) {
                return Err(CoreError::InvalidDiagram(format!(
                    "edge ({}, {}) has a missing endpoint",
                    e.a, e.b
                )));
            }
        }
        for side in [NodeKind::Input, NodeKind::Output] {
            let ids = self.boundary(side);
            for (i, &v) in ids.iter().enumerate() {
                if self.node(v).port != i {
                    return Err(CoreError::InvalidDiagram(format!(
                        "{side:?} ports are not 0..{}",
                        ids.len()
                    )));
                }
                if self.degree(v) != 1 {
                    return Err(CoreError::InvalidDiagram(format!(
                        "boundary node {v} has degree {}",
                        self.degree(v)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest number of edges crossing a vertical line drawn between two
    /// consecutive occupied columns. Every node needs a column.
    pub fn max_vertical_cut(&self) -> Result<usize, CoreError> {
        let mut cols: Vec<i64> = Vec::with_capacity(self.nodes.len());
        for &v in self.nodes.keys() {
            match self.columns.get(&v) {
                Some(&c) => cols.push(c),
                None => {
                    return Err(CoreError::InvalidDiagram(format!("node {v} has no column")))
                }
            }
        }
        cols.sort_unstable();
        cols.dedup();
        if cols.len() < 2 {
            return Ok(0);
        }
        let pos = |c: i64| cols.binary_search(&c).unwrap();
        let mut diff = alloc::vec![0isize; cols.len()];
        for e in &self.edges {
            let (x, y) = (pos(self.columns[&e.a]), pos(self.columns[&e.b]));
            let (lo, hi) = (x.min(y), x.max(y));
            if lo < hi {
                diff[lo] += 1;
                diff[hi] -= 1;
            }
        }
        let mut cur = 0isize;
        let mut best = 0isize;
        for d in &diff[..cols.len() - 1] {
            cur += d;
            best = best.max(cur);
        }
        Ok(best as usize)
    }
}
