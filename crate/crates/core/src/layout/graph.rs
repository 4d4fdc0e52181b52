//! Undirected multigraphs, vertex orderings and their widths.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Parallel edges and self-loops are kept.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        self.edges.push((u, v));
        self.adj[u].push(v);
        if u != v {
            self.adj[v].push(u);
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors with multiplicity; a self-loop lists the vertex once.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of non-loop edge ends at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| u != v).count()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&w| w == v).count()
    }
}

/// A bijection from vertices to positions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl Ordering {
    pub fn from_order(order: Vec<usize>) -> Result<Self, CoreError> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(CoreError::InvalidOrdering(format!(
                    "{v} is out of range or repeated"
                )));
            }
            rank[v] = i;
        }
        Ok(Ordering { order, rank })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            order: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn check(g: &Graph, f: &Ordering) {
    assert_eq!(g.len(), f.len(), "ordering does not match graph size");
}

/// Largest number of edges crossing a gap between consecutive positions,
/// counted with multiplicity.
pub fn cutwidth_of(g: &Graph, f: &Ordering) -> usize {
    check(g, f);
    let n = g.len();
    if n == 0 {
        return 0;
    }
    // diff[i] = edges opening at gap i minus edges closing.
    let mut diff = vec![0isize; n + 1];
    for &(u, v) in g.edges() {
        let (a, b) = (f.rank(u).min(f.rank(v)), f.rank(u).max(f.rank(v)));
        if a < b {
            diff[a] += 1;
            diff[b] -= 1;
        }
    }
    let mut cur = 0isize;
    let mut best = 0isize;
    for d in diff.iter().take(n) {
        cur += d;
        best = best.max(cur);
    }
    best as usize
}

/// Vertex separation number: the largest number of vertices at or before a
/// position that still have a neighbor after it.
pub fn vsep_of(g: &Graph, f: &Ordering) -> usize {
    check(g, f);
    let n = g.len();
    // Vertex v is counted at positions rank(v)..last(v)-1.
    let mut diff = vec![0isize; n + 1];
    for v in 0..n {
        let last = g
            .neighbors(v)
            .iter()
            .map(|&u| f.rank(u))
            .max()
            .unwrap_or(0);
        if last > f.rank(v) {
            diff[f.rank(v)] += 1;
            diff[last] -= 1;
        }
    }
    let mut cur = 0isize;
    let mut best = 0isize;
    for d in diff.iter().take(n) {
        cur += d;
        best = best.max(cur);
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn complete_graph_widths() {
        let g = complete(4);
        let f = Ordering::identity(4);
        assert_eq!(cutwidth_of(&g, &f), 4);
        assert_eq!(vsep_of(&g, &f), 3);
    }

    #[test]
    fn multiplicity_counts_for_cuts_only() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1), (1, 1)]);
        let f = Ordering::identity(2);
        assert_eq!(cutwidth_of(&g, &f), 2);
        assert_eq!(vsep_of(&g, &f), 1);
    }

    #[test]
    fn bad_ordering() {
        assert!(Ordering::from_order(vec![0, 0]).is_err());
        assert!(Ordering::from_order(vec![2, 0]).is_err());
    }
}
