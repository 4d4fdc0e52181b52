//! Circuits to diagrams and circuit-like diagrams back to circuits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::diagram::{EdgeKind, NodeId, NodeKind, ZxDiagram};
use crate::angle::Angle;
use crate::circuit::{Circuit, Gate};
use crate::error::CoreError;

/// Diagram of `c` in the measurement branch `outcomes` (missing entries are 0).
///
/// Rows are wire indices and columns are gate positions, so the result is
/// circuit-like. Hadamard gates become Hadamard edges.
pub fn circuit_to_zx(c: &Circuit, outcomes: &[bool]) -> Result<ZxDiagram, CoreError> {
    c.validate()?;
    let mut d = ZxDiagram::new();
    // Last node on each wire and whether a Hadamard is pending after it.
    let mut last: Vec<Option<NodeId>> = vec![None; c.num_qubits];
    let mut pending = vec![false; c.num_qubits];
    for (port, &w) in c.inputs.iter().enumerate() {
        let v = d.add_boundary(NodeKind::Input, port);
        d.columns.insert(v, 0);
        d.rows.insert(v, w);
        last[w] = Some(v);
    }
    let mut k = 0usize;
    let outcome = |m: usize| outcomes.get(m).copied().unwrap_or(false);
    for (i, g) in c.gates.iter().enumerate() {
        let col = i as i64 + 1;
        let mut place = |d: &mut ZxDiagram, w: usize, kind: NodeKind, phase: Angle, chain: bool| {
            let v = d.add_spider(kind, phase);
            d.columns.insert(v, col);
            d.rows.insert(v, w);
            if chain {
                let prev = last[w].expect("validated circuit has a live wire");
                let ek = if pending[w] { EdgeKind::Hadamard } else { EdgeKind::Plain };
                d.add_edge(prev, v, ek);
            }
            pending[w] = false;
            last[w] = Some(v);
            v
        };
        match g {
            Gate::H(w) => pending[*w] ^= true,
            Gate::X(w) => {
                place(&mut d, *w, NodeKind::X, Angle::pi(), true);
            }
            Gate::Rx(w, a) => {
                place(&mut d, *w, NodeKind::X, a.clone(), true);
            }
            Gate::Cnot(a, b) => {
                let u = place(&mut d, *a, NodeKind::Z, Angle::zero(), true);
                let v = place(&mut d, *b, NodeKind::X, Angle::zero(), true);
                d.add_edge(u, v, EdgeKind::Plain);
            }
            Gate::Cz(a, b) => {
                let u = place(&mut d, *a, NodeKind::Z, Angle::zero(), true);
                let v = place(&mut d, *b, NodeKind::Z, Angle::zero(), true);
                d.add_edge(u, v, EdgeKind::Hadamard);
            }
            Gate::PrepPlus(w) => {
                place(&mut d, *w, NodeKind::Z, Angle::zero(), false);
            }
            Gate::PrepZero(w) => {
                place(&mut d, *w, NodeKind::X, Angle::zero(), false);
            }
            Gate::MeasX(w) | Gate::MeasZ(w) => {
                let kind = if matches!(g, Gate::MeasX(_)) { NodeKind::Z } else { NodeKind::X };
                let phase = if outcome(k) { Angle::pi() } else { Angle::zero() };
                place(&mut d, *w, kind, phase, true);
                last[*w] = None;
                k += 1;
            }
            Gate::CtrlX { outcome: m, target } => {
                if outcome(*m) {
                    place(&mut d, *target, NodeKind::X, Angle::pi(), true);
                }
            }
            Gate::CtrlZ { outcome: m, target } => {
                if outcome(*m) {
                    place(&mut d, *target, NodeKind::Z, Angle::pi(), true);
                }
            }
            _ => {
                let a = g.z_phase().expect("remaining gates are Z rotations");
                place(&mut d, g.qubits()[0], NodeKind::Z, a, true);
            }
        }
    }
    let end = c.gates.len() as i64 + 1;
    for (port, &w) in c.outputs.iter().enumerate() {
        let v = d.add_boundary(NodeKind::Output, port);
        d.columns.insert(v, end);
        d.rows.insert(v, w);
        let ek = if pending[w] { EdgeKind::Hadamard } else { EdgeKind::Plain };
        d.add_edge(last[w].expect("outputs are live"), v, ek);
    }
    Ok(d)
}

fn not_circuit_like(msg: alloc::string::String) -> CoreError {
    CoreError::NotCircuitLike(msg)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Reads a circuit-like diagram as a circuit.
///
/// Rows become wires. An edge between consecutive nodes of a row is a wire
/// segment (a Hadamard edge gives an H gate). Edges between rows must be
/// plain Z-X edges (CNOT) or Hadamard Z-Z edges (CZ). A spider that starts a
/// row segment is a preparation and one that ends it is a measurement.
pub fn zx_to_circuit(d: &ZxDiagram) -> Result<Circuit, CoreError> {
    d.validate()?;
    let ids = d.node_ids();
    let n = ids.len();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut row_of = vec![0usize; n];
    let mut col_of = vec![0i64; n];
    for (i, &v) in ids.iter().enumerate() {
        row_of[i] = *d
            .rows
            .get(&v)
            .ok_or_else(|| not_circuit_like(format!("node {v} has no row")))?;
        col_of[i] = *d
            .columns
            .get(&v)
            .ok_or_else(|| not_circuit_like(format!("node {v} has no column")))?;
    }
    let rows: Vec<usize> = row_of.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let wire = |r: usize| rows.binary_search(&r).unwrap();
    let mut on_row: Vec<Vec<usize>> = vec![Vec::new(); rows.len()];
    for i in 0..n {
        on_row[wire(row_of[i])].push(i);
    }
    let mut slot = vec![0usize; n];
    for list in &mut on_row {
        list.sort_by_key(|&i| (col_of[i], ids[i]));
        for (k, &i) in list.iter().enumerate() {
            slot[i] = k;
        }
    }
    let kind = |i: usize| d.kind(ids[i]);
    let mut left: Vec<Option<EdgeKind>> = vec![None; n];
    let mut right: Vec<Option<EdgeKind>> = vec![None; n];
    let mut cross: Vec<(usize, usize, EdgeKind)> = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in d.edges() {
        let (a, b) = (index[&e.a], index[&e.b]);
        if a == b {
            return Err(not_circuit_like(format!("self-loop on node {}", e.a)));
        }
        if row_of[a] == row_of[b] {
            let (l, r) = if slot[a] < slot[b] { (a, b) } else { (b, a) };
            if slot[r] != slot[l] + 1 || right[l].is_some() || left[r].is_some() {
                return Err(not_circuit_like(format!(
                    "edge ({}, {}) skips over a node or doubles a wire",
                    e.a, e.b
                )));
            }
            right[l] = Some(e.kind);
            left[r] = Some(e.kind);
        } else {
            if !kind(a).is_spider() || !kind(b).is_spider() {
                return Err(not_circuit_like(format!(
                    "boundary node on a vertical edge ({}, {})",
                    e.a, e.b
                )));
            }
            cross.push((a, b, e.kind));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    for i in 0..n {
        let ok = match kind(i) {
            NodeKind::Input => left[i].is_none() && right[i].is_some(),
            NodeKind::Output => right[i].is_none() && left[i].is_some(),
            _ => true,
        };
        if !ok {
            return Err(not_circuit_like(format!(
                "boundary node {} is not at the end of its row",
                ids[i]
            )));
        }
    }
    // Groups of nodes joined by vertical edges happen at the same time.
    let group: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        members.entry(group[i]).or_default().push(i);
    }
    let gids: Vec<usize> = members.keys().copied().collect();
    let gpos: BTreeMap<usize, usize> = gids.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut dag = crate::fvs::Digraph::new(gids.len());
    for list in &on_row {
        for w in list.windows(2) {
            let (a, b) = (gpos[&group[w[0]]], gpos[&group[w[1]]]);
            if a == b {
                return Err(not_circuit_like(format!(
                    "nodes {} and {} share a row and a vertical group",
                    ids[w[0]], ids[w[1]]
                )));
            }
            dag.add_arc(a, b);
        }
    }
    let key = |k: usize| {
        let m = &members[&gids[k]];
        (m.iter().map(|&i| col_of[i]).min().unwrap(), m.iter().map(|&i| ids[i]).min().unwrap())
    };
    let order = dag
        .topo_order_by(&[], key)
        .ok_or_else(|| not_circuit_like("vertical edges force a cyclic time order".to_string()))?;

    let mut cross_of: BTreeMap<usize, Vec<(usize, usize, EdgeKind)>> = BTreeMap::new();
    for &(a, b, k) in &cross {
        cross_of.entry(group[a]).or_default().push((a, b, k));
    }
    let mut gates = Vec::new();
    for k in order {
        let g = gids[k];
        let mut list = members[&g].clone();
        list.sort_by_key(|&i| (row_of[i], ids[i]));
        for &i in &list {
            let w = wire(row_of[i]);
            if left[i] == Some(EdgeKind::Hadamard) {
                gates.push(Gate::H(w));
            }
            if kind(i).is_spider() && left[i].is_none() {
                gates.push(match kind(i) {
                    NodeKind::Z => Gate::PrepPlus(w),
                    _ => Gate::PrepZero(w),
                });
            }
            let phase = d.node(ids[i]).phase.clone();
            match kind(i) {
                NodeKind::Z => gates.extend(Gate::z_rotation(w, phase)),
                NodeKind::X if !phase.is_zero() => gates.push(if phase == Angle::pi() {
                    Gate::X(w)
                } else {
                    Gate::Rx(w, phase)
                }),
                _ => {}
            }
        }
        for &(a, b, ek) in cross_of.get(&g).map(|v| v.as_slice()).unwrap_or(&[]) {
            let (wa, wb) = (wire(row_of[a]), wire(row_of[b]));
            let gate = match (kind(a), kind(b), ek) {
                (NodeKind::Z, NodeKind::X, EdgeKind::Plain) => Gate::Cnot(wa, wb),
                (NodeKind::X, NodeKind::Z, EdgeKind::Plain) => Gate::Cnot(wb, wa),
                (NodeKind::Z, NodeKind::Z, EdgeKind::Hadamard) => Gate::Cz(wa, wb),
                _ => {
                    return Err(not_circuit_like(format!(
                        "vertical edge ({}, {}) is neither Z-X plain nor Z-Z Hadamard",
                        ids[a], ids[b]
                    )))
                }
            };
            gates.push(gate);
        }
        for &i in &list {
            if kind(i).is_spider() && right[i].is_none() {
                let w = wire(row_of[i]);
                gates.push(match kind(i) {
                    NodeKind::Z => Gate::MeasX(w),
                    _ => Gate::MeasZ(w),
                });
            }
        }
    }
    let c = Circuit {
        num_qubits: rows.len(),
        gates,
        inputs: d.inputs().iter().map(|v| wire(d.rows[v])).collect(),
        outputs: d.outputs().iter().map(|v| wire(d.rows[v])).collect(),
    };
    c.validate()
        .map_err(|e| not_circuit_like(format!("extracted circuit is invalid: {e}")))?;
    Ok(c)
}
