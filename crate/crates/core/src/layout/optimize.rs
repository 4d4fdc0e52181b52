//! Re-laying out diagrams along an ordering of their signature graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;

use super::graph::{cutwidth_of, Ordering};
use super::signature::{merge_boundaries, signature_with, Signature, SignatureOptions};
use super::graph::Graph;
use super::solve::{solve_cutwidth, solve_exact, solve_greedy, Constraints, WidthKind};
use crate::angle::Angle;
use crate::budget::Budget;
use crate::error::CoreError;
use crate::zx::{rules, EdgeKind, NodeId, NodeKind, ZxDiagram};

#[derive(Clone, Debug)]
pub struct Reordered {
    pub diagram: ZxDiagram,
    /// Cutwidth of the ordering, equal to the largest vertical cut.
    pub width: usize,
    pub optimal: bool,
}

/// Moves spiders to new columns following a fixed-endvertices cutwidth
/// ordering. Connectivity is untouched; rows are dropped.
pub fn reorder_diagram_cutwidth(
    d: &ZxDiagram,
    exact: bool,
    budget: &Budget,
) -> Result<Reordered, CoreError> {
    d.validate()?;
    let sig = signature_with(
        d,
        SignatureOptions {
            reduce_degree2: true,
            merge_leaves: false,
        },
    );
    let (mg, map, first, last) = merge_boundaries(&sig);
    let solved = solve_cutwidth(&mg, first, last, exact, budget)?;
    let f = &solved.ordering;
    let mut pos: BTreeMap<NodeId, Rational64> = BTreeMap::new();
    for (v, &node) in sig.nodes.iter().enumerate() {
        pos.insert(node, Rational64::from_integer(f.rank(map[v]) as i64));
    }
    for (i, &(a, b)) in sig.graph.edges().iter().enumerate() {
        let path = &sig.paths[i];
        let k = path.interior.len() as i64;
        let (pa, pb) = (pos[&sig.nodes[a]], pos[&sig.nodes[b]]);
        for (j, &s) in path.interior.iter().enumerate() {
            let t = Rational64::new(j as i64 + 1, k + 1);
            pos.insert(s, pa + (pb - pa) * t);
        }
    }
    let distinct: Vec<Rational64> = pos.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = d.clone();
    out.rows.clear();
    out.columns = pos
        .iter()
        .map(|(&v, p)| (v, distinct.binary_search(p).unwrap() as i64))
        .collect();
    Ok(Reordered {
        diagram: out,
        width: cutwidth_of(&mg, f),
        optimal: solved.optimal,
    })
}

#[derive(Clone, Debug)]
pub struct OptimizedDiagram {
    /// Circuit-like diagram equal to the input up to a scalar.
    pub diagram: ZxDiagram,
    /// Vertex separation of the ordering used, on the instance of
    /// [`layout_problem`].
    pub pathwidth: usize,
    /// Number of rows of the result.
    pub tracks: usize,
    pub optimal: bool,
    pub ordering: Ordering,
    /// Signature of the simplified input the ordering refers to.
    pub signature: Signature,
}

/// The diagram the layout works on: graph-like, fused, without identities.
pub fn prepare_for_layout(d: &ZxDiagram) -> ZxDiagram {
    let mut p = d.clone();
    rules::simplify(&mut p);
    p
}

/// Signature used by [`optimize_diagram`], with boundary nodes as vertices.
pub fn layout_signature(prepared: &ZxDiagram) -> Signature {
    signature_with(prepared, SignatureOptions::raw())
}

/// The pathwidth instance behind [`optimize_diagram`]: the signature plus
/// one extra vertex joined to every output and pinned last, so that output
/// wires count as open up to the right edge. Inputs form the first bag.
pub fn layout_problem(sig: &Signature) -> (Graph, Constraints) {
    let mut g = sig.graph.clone();
    let mut last = sig.outputs.clone();
    if !sig.outputs.is_empty() {
        let t = g.add_vertex();
        for &w in &sig.outputs {
            g.add_edge(w, t);
        }
        last.push(t);
    }
    (g, Constraints::endbags(&sig.inputs, &last))
}

/// Rebuilds a diagram as a circuit-like diagram with few rows.
///
/// Each vertex of the signature gets an interval from its own position to
/// that of its last neighbour and is laid out as a chain of unfused copies on
/// one row. An edge is drawn as a vertical Hadamard edge between two copies
/// at the position of its later endpoint. An input wire is continued by its
/// spider on the same row, and likewise a spider by its last output wire,
/// whenever that is possible. Other boundary wires are routed through
/// phase-free spiders.
pub fn optimize_diagram(
    d: &ZxDiagram,
    exact: bool,
    budget: &Budget,
) -> Result<OptimizedDiagram, CoreError> {
    d.validate()?;
    let p = prepare_for_layout(d);
    let sig = layout_signature(&p);
    let g = &sig.graph;
    let (gplus, cons) = layout_problem(&sig);
    let solved = if exact {
        solve_exact(&gplus, WidthKind::Pathwidth, &cons, budget)?
    } else {
        solve_greedy(&gplus, WidthKind::Pathwidth, &cons)?
    };
    let f = solved.ordering.clone();
    let n = g.len();
    let last_input = sig.inputs.iter().map(|&v| f.rank(v)).max();
    let kind_of = |v: usize| p.kind(sig.nodes[v]);
    let edge_kind = |i: usize| p.edges()[sig.paths[i].edges[0]].kind;
    let edges = g.edges();
    let incident: Vec<Vec<usize>> = {
        let mut inc = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    };
    let other = |i: usize, v: usize| if edges[i].0 == v { edges[i].1 } else { edges[i].0 };

    // Hand-offs: (heir, edge) for each vertex that gives its row away.
    let mut heir: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
    for v in 0..n {
        if kind_of(v) != NodeKind::Input || incident[v].len() != 1 {
            continue;
        }
        let e = incident[v][0];
        let u = other(e, v);
        if kind_of(u) == NodeKind::Input || pred[u].is_some() {
            continue;
        }
        // Inputs are visited in rank order only if we pick the earliest.
        let earliest = incident[u]
            .iter()
            .map(|&i| other(i, u))
            .filter(|&x| kind_of(x) == NodeKind::Input && incident[x].len() == 1)
            .min_by_key(|&x| f.rank(x));
        if earliest == Some(v) {
            heir[v] = Some((u, e));
            pred[u] = Some((v, e));
        }
    }
    for u in 0..n {
        if !kind_of(u).is_spider() {
            continue;
        }
        let last = incident[u].iter().copied().max_by_key(|&i| f.rank(other(i, u)));
        if let Some(e) = last {
            let w = other(e, u);
            if kind_of(w) == NodeKind::Output && f.rank(w) > f.rank(u) {
                heir[u] = Some((w, e));
                pred[w] = Some((u, e));
            }
        }
    }

    // Tracks.
    let mut track = vec![usize::MAX; n];
    let mut free: BTreeSet<usize> = BTreeSet::new();
    let mut open: Vec<(usize, usize)> = Vec::new();
    let mut count = 0usize;
    for &x in f.order().iter().filter(|&&x| x < n) {
        let r = f.rank(x);
        open.retain(|&(end, t)| {
            if end < r {
                free.insert(t);
                false
            } else {
                true
            }
        });
        track[x] = match pred[x] {
            Some((v, _)) => track[v],
            None => free.pop_first().unwrap_or_else(|| {
                count += 1;
                count - 1
            }),
        };
        if heir[x].is_none() {
            let mut end = incident[x].iter().map(|&i| f.rank(other(i, x))).max().unwrap_or(r).max(r);
            match kind_of(x) {
                // Boundary nodes sit at the outer columns, so their rows
                // must not be shared within a side.
                NodeKind::Output => end = usize::MAX,
                NodeKind::Input => end = end.max(last_input.unwrap_or(0)),
                _ => {}
            }
            open.push((end, track[x]));
        }
    }

    // Chains.
    let mut out = ZxDiagram::new();
    let mut cur: Vec<Option<NodeId>> = vec![None; n];
    let mut link: Vec<EdgeKind> = vec![EdgeKind::Plain; n];
    let mut copies = vec![0usize; n];
    let mut col: i64 = 0;
    let place = |out: &mut ZxDiagram, id: NodeId, row: usize, col: i64| {
        out.rows.insert(id, row);
        out.columns.insert(id, col);
    };
    for (port, &v) in sig.inputs.iter().enumerate() {
        let id = out.add_boundary(NodeKind::Input, port);
        place(&mut out, id, track[v], 0);
        cur[v] = Some(id);
    }
    // Next copy of spider `x`, chained to its row.
    let copy = |out: &mut ZxDiagram,
                cur: &mut Vec<Option<NodeId>>,
                link: &mut Vec<EdgeKind>,
                copies: &mut Vec<usize>,
                x: usize,
                col: i64|
     -> NodeId {
        let phase = if copies[x] == 0 {
            p.node(sig.nodes[x]).phase.clone()
        } else {
            Angle::zero()
        };
        copies[x] += 1;
        let id = out.add_spider(NodeKind::Z, phase);
        place(out, id, track[x], col);
        if let Some(prev) = cur[x] {
            out.add_edge(prev, id, link[x]);
        }
        link[x] = EdgeKind::Plain;
        cur[x] = Some(id);
        id
    };
    // Phase-free spider routing boundary vertex `b` to a vertical edge.
    let proxy = |out: &mut ZxDiagram,
                 cur: &mut Vec<Option<NodeId>>,
                 link: &mut Vec<EdgeKind>,
                 b: usize,
                 lk: EdgeKind,
                 col: i64|
     -> NodeId {
        let id = out.add_spider(NodeKind::Z, Angle::zero());
        place(out, id, track[b], col);
        match cur[b] {
            Some(prev) => out.add_edge(prev, id, lk),
            None => link[b] = lk,
        }
        cur[b] = Some(id);
        id
    };
    for &x in f.order().iter().filter(|&&x| x < n) {
        if kind_of(x).is_spider() {
            if let Some((v, e)) = pred[x] {
                cur[x] = cur[v];
                link[x] = edge_kind(e);
            }
            col += 1;
            copy(&mut out, &mut cur, &mut link, &mut copies, x, col);
        }
        let mut earlier: Vec<usize> = incident[x]
            .iter()
            .copied()
            .filter(|&i| {
                let y = other(i, x);
                f.rank(y) < f.rank(x)
                    && pred[x].is_none_or(|(_, e)| e != i)
                    && heir[y].is_none_or(|(_, e)| e != i)
            })
            .collect();
        earlier.sort_by_key(|&i| (f.rank(other(i, x)), i));
        earlier.dedup();
        for i in earlier {
            let y = other(i, x);
            let k = edge_kind(i);
            col += 1;
            let (sy, sx) = (kind_of(y).is_spider(), kind_of(x).is_spider());
            if sy && sx && k != EdgeKind::Hadamard {
                return Err(CoreError::InvalidDiagram(
                    "plain edge between spiders survived simplification".into(),
                ));
            }
            let ny = if sy {
                copy(&mut out, &mut cur, &mut link, &mut copies, y, col)
            } else {
                proxy(&mut out, &mut cur, &mut link, y, k.toggled(), col)
            };
            let nx = if sx {
                copy(&mut out, &mut cur, &mut link, &mut copies, x, col)
            } else {
                let lk = if sy { k.toggled() } else { EdgeKind::Plain };
                proxy(&mut out, &mut cur, &mut link, x, lk, col)
            };
            out.add_edge(ny, nx, EdgeKind::Hadamard);
        }
    }
    col += 1;
    for (port, &w) in sig.outputs.iter().enumerate() {
        let id = out.add_boundary(NodeKind::Output, port);
        place(&mut out, id, track[w], col);
        let (prev, k) = match pred[w] {
            Some((u, e)) => (cur[u], edge_kind(e)),
            None => (cur[w], link[w]),
        };
        let prev = prev.ok_or_else(|| CoreError::InvalidDiagram("output wire without source".into()))?;
        out.add_edge(prev, id, k);
    }
    remove_horizontal_identities(&mut out);
    Ok(OptimizedDiagram {
        diagram: out,
        pathwidth: solved.width,
        tracks: count,
        optimal: solved.optimal,
        ordering: f,
        signature: sig,
    })
}

/// Drops phase-free spiders sitting on a row with no vertical edge.
fn remove_horizontal_identities(d: &mut ZxDiagram) {
    for v in d.spiders() {
        if !d.node(v).phase.is_zero() {
            continue;
        }
        let inc = d.incident(v);
        if inc.len() != 2 {
            continue;
        }
        let (e1, e2) = (d.edges()[inc[0]], d.edges()[inc[1]]);
        let (x, y) = (e1.other(v), e2.other(v));
        let row = d.rows[&v];
        if x == v || y == v || d.rows[&x] != row || d.rows[&y] != row {
            continue;
        }
        d.remove_node(v);
        d.add_edge(x, y, e1.kind.compose(e2.kind));
    }
}
