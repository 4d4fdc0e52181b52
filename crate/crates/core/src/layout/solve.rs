//! Exact and greedy solvers for constrained linear layouts.
//!
//! Both widths are functions of the set of vertices placed so far, so the
//! exact solver is a dynamic program over subsets of the free vertices,
//! cut off by the greedy answer as an upper bound.

use alloc::vec;
use alloc::vec::Vec;

use super::graph::{cutwidth_of, vsep_of, Graph, Ordering};
use crate::budget::Budget;
use crate::error::CoreError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthKind {
    Cutwidth,
    Pathwidth,
}

impl WidthKind {
    pub fn width(self, g: &Graph, f: &Ordering) -> usize {
        match self {
            WidthKind::Cutwidth => cutwidth_of(g, f),
            WidthKind::Pathwidth => vsep_of(g, f),
        }
    }
}

/// Vertices pinned to the start (`head`, in the given order) and to the end
/// (`tail`, in the given order).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
}

impl Constraints {
    /// Fixed first and last vertex, as used for cutwidth.
    pub fn endpoints(first: Option<usize>, last: Option<usize>) -> Self {
        Constraints {
            head: first.into_iter().collect(),
            tail: last.into_iter().collect(),
        }
    }

    /// Fixed first and last bag, as used for pathwidth. Each bag is placed
    /// in index order; a vertex in both bags is kept in the first one.
    pub fn endbags(first: &[usize], last: &[usize]) -> Self {
        let mut head = first.to_vec();
        head.sort_unstable();
        head.dedup();
        let mut tail: Vec<usize> = last.iter().copied().filter(|v| !head.contains(v)).collect();
        tail.sort_unstable();
        tail.dedup();
        Constraints { head, tail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub ordering: Ordering,
    pub width: usize,
    /// False when the exact search was cut short and the greedy answer stands.
    pub optimal: bool,
}

/// Largest number of free vertices the exact solver accepts.
pub const EXACT_CAP: usize = 24;

struct Setup {
    head: Vec<usize>,
    middle: Vec<usize>,
    tail: Vec<usize>,
}

fn setup(g: &Graph, c: &Constraints) -> Result<Setup, CoreError> {
    let n = g.len();
    let mut seen = vec![false; n];
    for &v in c.head.iter().chain(&c.tail) {
        if v >= n {
            return Err(CoreError::InvalidOrdering(alloc::format!("vertex {v} out of range")));
        }
        if seen[v] {
            return Err(CoreError::Infeasible(alloc::format!(
                "vertex {v} is pinned twice"
            )));
        }
        seen[v] = true;
    }
    let middle = (0..n).filter(|&v| !seen[v]).collect();
    Ok(Setup {
        head: c.head.clone(),
        middle,
        tail: c.tail.clone(),
    })
}

/// Incremental width bookkeeping over a set of placed vertices.
struct Placed<'a> {
    g: &'a Graph,
    kind: WidthKind,
    inside: Vec<bool>,
    /// Non-loop neighbor ends still outside, per vertex.
    outside: Vec<usize>,
    cut: usize,
    boundary: usize,
}

impl<'a> Placed<'a> {
    fn new(g: &'a Graph, kind: WidthKind) -> Self {
        Placed {
            g,
            kind,
            inside: vec![false; g.len()],
            outside: (0..g.len()).map(|v| g.degree(v)).collect(),
            cut: 0,
            boundary: 0,
        }
    }

    fn cost(&self) -> usize {
        match self.kind {
            WidthKind::Cutwidth => self.cut,
            WidthKind::Pathwidth => self.boundary,
        }
    }

    /// Cost after adding `x`, without adding it.
    fn cost_with(&self, x: usize) -> usize {
        match self.kind {
            WidthKind::Cutwidth => {
                let to_inside = self.g.neighbors(x).iter().filter(|&&u| u != x && self.inside[u]).count();
                self.cut + self.g.degree(x) - 2 * to_inside
            }
            WidthKind::Pathwidth => {
                let mut b = self.boundary;
                let mut dec = vec![];
                for &u in self.g.neighbors(x) {
                    if u != x && self.inside[u] {
                        dec.push(u);
                    }
                }
                dec.sort_unstable();
                let mut i = 0;
                while i < dec.len() {
                    let u = dec[i];
                    let k = dec[i..].iter().take_while(|&&w| w == u).count();
                    if self.outside[u] == k {
                        b -= 1;
                    }
                    i += k;
                }
                let out_x = self.g.neighbors(x).iter().filter(|&&u| u != x && !self.inside[u]).count();
                if out_x > 0 {
                    b += 1;
                }
                b
            }
        }
    }

    fn add(&mut self, x: usize) {
        let c = self.cost_with(x);
        self.cut = if self.kind == WidthKind::Cutwidth { c } else { self.cut };
        self.boundary = if self.kind == WidthKind::Pathwidth { c } else { self.boundary };
        self.inside[x] = true;
        let mut out_x = 0;
        for &u in self.g.neighbors(x) {
            if u == x {
                continue;
            }
            if self.inside[u] {
                self.outside[u] -= 1;
            } else {
                out_x += 1;
            }
        }
        self.outside[x] = out_x;
    }

    /// Neighbors of `x` not yet placed and not adjacent to any placed vertex.
    fn fresh(&self, x: usize) -> usize {
        let mut v: Vec<usize> = self
            .g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&u| {
                u != x
                    && !self.inside[u]
                    && !self.g.neighbors(u).iter().any(|&w| self.inside[w])
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }
}

fn finish(g: &Graph, kind: WidthKind, order: Vec<usize>, optimal: bool) -> Solved {
    let ordering = Ordering::from_order(order).expect("solver produced a permutation");
    let width = kind.width(g, &ordering);
    Solved {
        ordering,
        width,
        optimal,
    }
}

/// Greedy layout: repeatedly place the free vertex giving the smallest
/// prefix cost. Pathwidth ties go to the vertex that exposes fewer new
/// neighbors, then to the smaller index.
pub fn solve_greedy(g: &Graph, kind: WidthKind, c: &Constraints) -> Result<Solved, CoreError> {
    let s = setup(g, c)?;
    let mut p = Placed::new(g, kind);
    let mut order = Vec::with_capacity(g.len());
    for &v in &s.head {
        p.add(v);
        order.push(v);
    }
    let mut free = s.middle.clone();
    while !free.is_empty() {
        let (i, _) = free
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let tie = match kind {
                    WidthKind::Pathwidth => p.fresh(x),
                    WidthKind::Cutwidth => 0,
                };
                (i, (p.cost_with(x), tie, x))
            })
            .min_by_key(|&(_, k)| k)
            .unwrap();
        let x = free.remove(i);
        p.add(x);
        order.push(x);
    }
    order.extend(&s.tail);
    Ok(finish(g, kind, order, true))
}

/// Exact layout by subset dynamic programming over the free vertices.
///
/// Returns the greedy layout with `optimal == false` if the budget runs out.
pub fn solve_exact(
    g: &Graph,
    kind: WidthKind,
    c: &Constraints,
    budget: &Budget,
) -> Result<Solved, CoreError> {
    let s = setup(g, c)?;
    let m = s.middle.len();
    if m > EXACT_CAP {
        return Err(CoreError::CapExceeded {
            what: "exact layout (free vertices)",
            needed: m,
            cap: EXACT_CAP,
        });
    }
    let greedy = solve_greedy(g, kind, c)?;
    let meter = budget.meter();

    // Cost of the head prefixes and of the tail prefixes does not depend on
    // how the middle is arranged.
    let mut p = Placed::new(g, kind);
    let mut head_cost = 0;
    for &v in &s.head {
        p.add(v);
        head_cost = head_cost.max(p.cost());
    }
    let mut q = Placed::new(g, kind);
    for &v in s.head.iter().chain(&s.middle) {
        q.add(v);
    }
    let mut tail_cost = 0;
    for &v in s.tail.iter().take(s.tail.len().saturating_sub(1)) {
        q.add(v);
        tail_cost = tail_cost.max(q.cost());
    }
    // The full set before the tail starts.
    let full_cost = if s.tail.is_empty() { 0 } else { cost_of_set(g, kind, &s, (1usize << m) - 1) };
    let fixed = head_cost.max(tail_cost).max(full_cost);
    if fixed >= greedy.width {
        return Ok(greedy);
    }
    let ub = greedy.width as u16;

    let size = 1usize << m;
    let mut cost = vec![0u16; size];
    let mut best = vec![u16::MAX; size];
    let mut parent = vec![u8::MAX; size];
    cost[0] = head_cost_set(g, kind, &s) as u16;
    best[0] = head_cost as u16;
    let mid_index: Vec<Option<usize>> = {
        let mut v = vec![None; g.len()];
        for (i, &x) in s.middle.iter().enumerate() {
            v[x] = Some(i);
        }
        v
    };
    let in_head: Vec<bool> = {
        let mut v = vec![false; g.len()];
        for &x in &s.head {
            v[x] = true;
        }
        v
    };
    for t in 1..size {
        if !meter.tick() {
            return Ok(Solved {
                optimal: false,
                ..greedy
            });
        }
        let low = t.trailing_zeros() as usize;
        let prev = t & (t - 1);
        let x = s.middle[low];
        // Cost of head + t from head + prev.
        cost[t] = match kind {
            WidthKind::Cutwidth => {
                let mut inside = 0usize;
                for &u in g.neighbors(x) {
                    if u == x {
                        continue;
                    }
                    if in_head[u] || mid_index[u].is_some_and(|i| prev >> i & 1 == 1) {
                        inside += 1;
                    }
                }
                (cost[prev] as usize + g.degree(x) - 2 * inside) as u16
            }
            WidthKind::Pathwidth => cost_of_set(g, kind, &s, t) as u16,
        };
        if cost[t] >= ub {
            continue;
        }
        let mut bt = u16::MAX;
        let mut bp = u8::MAX;
        let mut rest = t;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let b = best[t & !(1 << i)];
            if b < bt {
                bt = b;
                bp = i as u8;
            }
        }
        if bt != u16::MAX {
            best[t] = bt.max(cost[t]);
            parent[t] = bp;
        }
    }
    let full = size - 1;
    let dp_width = best[full].max(fixed as u16);
    if best[full] == u16::MAX || dp_width >= ub {
        return Ok(greedy);
    }
    let mut mid = Vec::with_capacity(m);
    let mut t = full;
    while t != 0 {
        let i = parent[t] as usize;
        mid.push(s.middle[i]);
        t &= !(1 << i);
    }
    mid.reverse();
    let mut order = s.head.clone();
    order.extend(mid);
    order.extend(&s.tail);
    Ok(finish(g, kind, order, true))
}

fn head_cost_set(g: &Graph, kind: WidthKind, s: &Setup) -> usize {
    cost_of_set(g, kind, s, 0)
}

/// Prefix cost of head plus the middle vertices selected by `t`.
fn cost_of_set(g: &Graph, kind: WidthKind, s: &Setup, t: usize) -> usize {
    let mut inside = vec![false; g.len()];
    for &v in &s.head {
        inside[v] = true;
    }
    for (i, &v) in s.middle.iter().enumerate() {
        if t >> i & 1 == 1 {
            inside[v] = true;
        }
    }
    match kind {
        WidthKind::Cutwidth => g
            .edges()
            .iter()
            .filter(|&&(u, v)| inside[u] != inside[v])
            .count(),
        WidthKind::Pathwidth => (0..g.len())
            .filter(|&v| inside[v] && g.neighbors(v).iter().any(|&u| !inside[u]))
            .count(),
    }
}

/// Minimum-cutwidth ordering with optional fixed first and last vertex.
pub fn solve_cutwidth(
    g: &Graph,
    first: Option<usize>,
    last: Option<usize>,
    exact: bool,
    budget: &Budget,
) -> Result<Solved, CoreError> {
    let c = Constraints::endpoints(first, last);
    if exact {
        solve_exact(g, WidthKind::Cutwidth, &c, budget)
    } else {
        solve_greedy(g, WidthKind::Cutwidth, &c)
    }
}

/// Minimum vertex-separation ordering with fixed first and last bags.
pub fn solve_pathwidth(
    g: &Graph,
    first: &[usize],
    last: &[usize],
    exact: bool,
    budget: &Budget,
) -> Result<Solved, CoreError> {
    let c = Constraints::endbags(first, last);
    if exact {
        solve_exact(g, WidthKind::Pathwidth, &c, budget)
    } else {
        solve_greedy(g, WidthKind::Pathwidth, &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i);
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn star_and_cycle() {
        let b = Budget::unlimited();
        assert_eq!(solve_cutwidth(&star(3), None, None, true, &b).unwrap().width, 2);
        assert_eq!(solve_cutwidth(&cycle(5), None, None, true, &b).unwrap().width, 2);
        assert_eq!(solve_pathwidth(&cycle(5), &[], &[], true, &b).unwrap().width, 2);
        assert_eq!(solve_pathwidth(&star(4), &[], &[], true, &b).unwrap().width, 1);
    }

    #[test]
    fn fixed_endpoints_on_a_claw() {
        let b = Budget::unlimited();
        let s = solve_cutwidth(&star(3), Some(1), Some(2), true, &b).unwrap();
        assert_eq!(s.width, 2);
        assert_eq!(s.ordering.order()[0], 1);
        assert_eq!(s.ordering.order()[3], 2);
    }

    #[test]
    fn exact_never_worse_than_greedy() {
        let g = Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0), (0, 1)]);
        for kind in [WidthKind::Cutwidth, WidthKind::Pathwidth] {
            let c = Constraints::endpoints(Some(0), Some(5));
            let e = solve_exact(&g, kind, &c, &Budget::unlimited()).unwrap();
            let gr = solve_greedy(&g, kind, &c).unwrap();
            assert!(e.width <= gr.width);
            assert_eq!(e.width, kind.width(&g, &e.ordering));
        }
    }

    #[test]
    fn pinned_twice_is_infeasible() {
        let g = star(2);
        let c = Constraints {
            head: vec![0],
            tail: vec![0],
        };
        assert!(matches!(
            solve_greedy(&g, WidthKind::Cutwidth, &c),
            Err(CoreError::Infeasible(_))
        ));
    }
}
