//! Precedence graphs between phase gadgets and Hadamard gadgets, and
//! degadgetization along a feedback vertex set.
//!
//! Vertex `i < num_gadgets` is gadget `i`; vertex `num_gadgets + j` is pair `j`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::budget::Budget;
use crate::circuit::Circuit;
use crate::error::CoreError;
use crate::fvs::{min_fvs_exact, min_fvs_heuristic, Digraph};
use crate::gadget::{emit, Event, GadgetizedCircuit};

/// Largest pair count handed to the exact feedback vertex set search.
pub const EXACT_FVS_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct PrecedenceGraph {
    pub graph: Digraph,
    pub num_gadgets: usize,
    pub num_pairs: usize,
}

impl PrecedenceGraph {
    pub fn pair_vertex(&self, j: usize) -> usize {
        self.num_gadgets + j
    }

    pub fn event(&self, v: usize) -> Event {
        if v < self.num_gadgets {
            Event::Gadget(v)
        } else {
            Event::Pair(v - self.num_gadgets)
        }
    }
}

/// Pair-to-pair constraints: `b_i = a_j`, and the variables a pair or its
/// new variable need to be live.
fn pair_arcs(g: &GadgetizedCircuit) -> Vec<(usize, usize)> {
    let pa = g.pair_of_a();
    let pb = g.pair_of_b();
    let mut arcs = Vec::new();
    for (j, p) in g.pairs.iter().enumerate() {
        if let Some(k) = pa[p.b] {
            arcs.push((j, k));
        }
        for r in p.a_extra.iter().chain(g.birth_extra[p.b].iter()) {
            if let Some(m) = pb[r] {
                arcs.push((m, j));
            }
            if let Some(m) = pa[r] {
                arcs.push((j, m));
            }
        }
    }
    arcs
}

/// Gadget `i` must precede pair `j` when it uses `a_j`, and follow it when
/// it uses `b_j`.
pub fn build_precedence_graph(g: &GadgetizedCircuit) -> PrecedenceGraph {
    let np = g.gadgets.len();
    let mut graph = Digraph::new(np + g.pairs.len());
    let pa = g.pair_of_a();
    let pb = g.pair_of_b();
    for (i, gd) in g.gadgets.iter().enumerate() {
        for v in gd.parity.iter() {
            if let Some(j) = pa[v] {
                graph.add_arc(i, np + j);
            }
            if let Some(j) = pb[v] {
                graph.add_arc(np + j, i);
            }
        }
    }
    for (i, j) in pair_arcs(g) {
        graph.add_arc(np + i, np + j);
    }
    PrecedenceGraph {
        graph,
        num_gadgets: np,
        num_pairs: g.pairs.len(),
    }
}

/// Conflicts between pairs only: `h_i -> h_j` for every arc between pairs
/// and every path `h_i -> p -> h_j` through a gadget. `i = j` gives a loop.
pub fn hadamard_conflict_graph(pg: &PrecedenceGraph) -> Digraph {
    let np = pg.num_gadgets;
    let mut out = Digraph::new(pg.num_pairs);
    for (u, v) in pg.graph.arcs() {
        if u >= np && v >= np {
            out.add_arc(u - np, v - np);
        }
    }
    for p in 0..np {
        for u in pg.graph.predecessors(p) {
            for v in pg.graph.successors(p) {
                if u >= np && v >= np {
                    out.add_arc(u - np, v - np);
                }
            }
        }
    }
    out
}

/// Pairs to keep as gadgets: a minimum feedback vertex set of the conflict
/// graph, searched exactly when asked and small enough.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeptPairs {
    pub kept: Vec<usize>,
    pub optimal: bool,
}

pub fn choose_kept_pairs(g: &GadgetizedCircuit, exact: bool, budget: &Budget) -> KeptPairs {
    let conflicts = hadamard_conflict_graph(&build_precedence_graph(g));
    if exact && conflicts.len() <= EXACT_FVS_CAP {
        let r = min_fvs_exact(&conflicts, budget);
        KeptPairs {
            kept: r.set,
            optimal: r.optimal,
        }
    } else {
        let mut kept = min_fvs_heuristic(&conflicts);
        kept.sort_unstable();
        KeptPairs {
            kept,
            optimal: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Degadgetized {
    pub circuit: Circuit,
    /// Pairs left as gadgets, sorted.
    pub kept: Vec<usize>,
    /// Pairs that had to be added to the requested set to make a schedule.
    pub repaired: Vec<usize>,
    pub schedule: Vec<Event>,
}

/// Rewrites every pair outside `kept` back into a Hadamard gate and
/// schedules gadgets and pairs in a topological order that respects this.
/// Ties follow the source order.
///
/// `kept` must be a feedback vertex set of the conflict graph. A few
/// further pairs may be kept when the liveness of a kept pair's variables
/// still closes a cycle; they are reported in `repaired`.
pub fn degadgetize(g: &GadgetizedCircuit, kept: &[usize]) -> Result<Degadgetized, CoreError> {
    let h = g.pairs.len();
    let pg = build_precedence_graph(g);
    let mut in_x = vec![false; h];
    for &j in kept {
        if j >= h {
            return Err(CoreError::Infeasible(format!("no pair {j}")));
        }
        in_x[j] = true;
    }
    let conflicts = hadamard_conflict_graph(&pg);
    if let Some(v) = conflicts.cycle_vertex(&in_x) {
        return Err(CoreError::CycleDetected(v));
    }
    let np = g.gadgets.len();
    let mut source_pos = vec![0usize; np + h];
    for (k, e) in g.event_order.iter().enumerate() {
        let v = match *e {
            Event::Gadget(i) => i,
            Event::Pair(j) => np + j,
        };
        source_pos[v] = k;
    }
    let pa = g.pair_of_a();
    let pb = g.pair_of_b();
    let mut repaired = Vec::new();
    loop {
        let mut s = Digraph::new(np + h);
        for (i, gd) in g.gadgets.iter().enumerate() {
            for v in gd.parity.iter() {
                if let Some(j) = pa[v].filter(|&j| !in_x[j]) {
                    s.add_arc(i, np + j);
                }
                // A kept pair's b is prepared when first needed, unless
                // its birth depends on other variables.
                if let Some(j) = pb[v].filter(|&j| !in_x[j] || !g.birth_extra[g.pairs[j].b].is_empty()) {
                    s.add_arc(np + j, i);
                }
            }
        }
        for (i, j) in pair_arcs(g) {
            if !in_x[i] || !in_x[j] {
                s.add_arc(np + i, np + j);
            }
        }
        if let Some(order) = s.topo_order_by(&[], |v| source_pos[v]) {
            let schedule: Vec<Event> = order.iter().map(|&v| pg.event(v)).collect();
            let plain: Vec<bool> = in_x.iter().map(|x| !x).collect();
            let circuit = emit(g, &schedule, &plain)?;
            return Ok(Degadgetized {
                circuit,
                kept: (0..h).filter(|&j| in_x[j]).collect(),
                repaired,
                schedule,
            });
        }
        let alive = vec![true; np + h];
        let j = s
            .sccs(&alive)
            .into_iter()
            .filter(|c| c.len() > 1 || s.has_arc(c[0], c[0]))
            .flat_map(|c| c.into_iter().filter(|&v| v >= np && !in_x[v - np]))
            .map(|v| v - np)
            .min()
            .ok_or_else(|| CoreError::Infeasible("no schedule for the kept pairs".into()))?;
        in_x[j] = true;
        repaired.push(j);
    }
}

/// The conflict graph as text: a `p fvs <vertices> <arcs>` line, then one
/// `a <u> <v>` line per arc, 1-based.
pub fn conflict_graph_text(g: &Digraph) -> String {
    let mut s = format!("p fvs {} {}\n", g.len(), g.num_arcs());
    for (u, v) in g.arcs() {
        let _ = writeln!(s, "a {} {}", u + 1, v + 1);
    }
    s
}
