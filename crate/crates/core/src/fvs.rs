//! Directed graphs and minimum feedback vertex sets.

use alloc::collections::{BTreeSet, BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::budget::{Budget, Meter};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<BTreeSet<usize>>,
    pred: Vec<BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![BTreeSet::new(); n],
            pred: vec![BTreeSet::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.succ[u].insert(v);
        self.pred[v].insert(u);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(&v)
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[u].iter().copied()
    }

    pub fn predecessors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[u].iter().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    pub fn num_arcs(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    /// Kahn's algorithm on the vertices not in `removed`, always emitting the
    /// ready vertex with the smallest key. `None` if a cycle remains.
    pub fn topo_order_by<K: Ord>(
        &self,
        removed: &[bool],
        key: impl Fn(usize) -> K,
    ) -> Option<Vec<usize>> {
        let n = self.len();
        let alive = |v: usize| !removed.get(v).copied().unwrap_or(false);
        let mut indeg = vec![0usize; n];
        for (u, v) in self.arcs() {
            if alive(u) && alive(v) {
                indeg[v] += 1;
            }
        }
        let mut heap = BinaryHeap::new();
        for v in (0..n).filter(|&v| alive(v) && indeg[v] == 0) {
            heap.push(Reverse((key(v), v)));
        }
        let mut order = Vec::new();
        while let Some(Reverse((_, u))) = heap.pop() {
            order.push(u);
            for v in self.successors(u) {
                if alive(v) {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        heap.push(Reverse((key(v), v)));
                    }
                }
            }
        }
        (order.len() == (0..n).filter(|&v| alive(v)).count()).then_some(order)
    }

    pub fn is_acyclic_without(&self, removed: &[bool]) -> bool {
        self.topo_order_by(removed, |v| v).is_some()
    }

    /// A vertex on some cycle of the graph minus `removed`.
    pub fn cycle_vertex(&self, removed: &[bool]) -> Option<usize> {
        let alive: Vec<bool> = (0..self.len())
            .map(|v| !removed.get(v).copied().unwrap_or(false))
            .collect();
        self.shortest_cycle(&alive).map(|c| c[0])
    }

    /// Strongly connected components of the alive subgraph (Tarjan).
    pub fn sccs(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if !alive[root] || index[root] != usize::MAX {
                continue;
            }
            // Explicit DFS stack of (vertex, successors still to visit).
            let mut call: Vec<(usize, Vec<usize>)> = Vec::new();
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, self.successors(root).filter(|&v| alive[v]).collect()));
            while let Some((u, rest)) = call.last_mut() {
                let u = *u;
                if let Some(v) = rest.pop() {
                    if index[v] == usize::MAX {
                        index[v] = counter;
                        low[v] = counter;
                        counter += 1;
                        stack.push(v);
                        on_stack[v] = true;
                        call.push((v, self.successors(v).filter(|&w| alive[w]).collect()));
                    } else if on_stack[v] {
                        low[u] = low[u].min(index[v]);
                    }
                } else {
                    call.pop();
                    if let Some((p, _)) = call.last() {
                        low[*p] = low[*p].min(low[u]);
                    }
                    if low[u] == index[u] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == u {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out
    }

    fn shortest_cycle(&self, alive: &[bool]) -> Option<Vec<usize>> {
        let n = self.len();
        let mut best: Option<Vec<usize>> = None;
        for s in (0..n).filter(|&s| alive[s]) {
            if self.has_arc(s, s) {
                return Some(vec![s]);
            }
            // BFS from s back to s.
            let mut parent = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            let mut q = VecDeque::new();
            q.push_back(s);
            seen[s] = true;
            let mut found = None;
            'bfs: while let Some(u) = q.pop_front() {
                for v in self.successors(u) {
                    if !alive[v] {
                        continue;
                    }
                    if v == s {
                        found = Some(u);
                        break 'bfs;
                    }
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = u;
                        q.push_back(v);
                    }
                }
            }
            if let Some(mut u) = found {
                let mut cyc = vec![u];
                while u != s {
                    u = parent[u];
                    cyc.push(u);
                }
                cyc.reverse();
                if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                    best = Some(cyc);
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvsResult {
    /// Sorted vertex indices.
    pub set: Vec<usize>,
    /// False if the search ran out of budget and `set` is a heuristic answer.
    pub optimal: bool,
}

/// Drops vertices that cannot lie on a cycle and forces self-loops.
/// Returns false if an undeletable vertex carries a self-loop or `k` runs out.
fn reduce(
    g: &Digraph,
    alive: &mut [bool],
    undeletable: &[bool],
    taken: &mut Vec<usize>,
    k: &mut isize,
) -> bool {
    loop {
        let mut changed = false;
        for v in 0..g.len() {
            if !alive[v] {
                continue;
            }
            if g.has_arc(v, v) {
                if undeletable[v] {
                    return false;
                }
                alive[v] = false;
                taken.push(v);
                *k -= 1;
                if *k < 0 {
                    return false;
                }
                changed = true;
                continue;
            }
            let has_in = g.predecessors(v).any(|u| alive[u]);
            let has_out = g.successors(v).any(|u| alive[u]);
            if !has_in || !has_out {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Some FVS of size at most `k` of the alive subgraph avoiding
/// `undeletable`, or `None`.
fn search(
    g: &Digraph,
    alive: &[bool],
    undeletable: &[bool],
    k: isize,
    meter: &Meter<'_>,
) -> Option<Vec<usize>> {
    if k < 0 || !meter.tick() {
        return None;
    }
    let mut alive = alive.to_vec();
    let mut taken = Vec::new();
    let mut k = k;
    if !reduce(g, &mut alive, undeletable, &mut taken, &mut k) {
        return None;
    }
    let comps: Vec<Vec<usize>> = g
        .sccs(&alive)
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    if comps.is_empty() {
        return Some(taken);
    }
    if comps.len() > 1 {
        // Components are independent: size each one separately.
        for comp in comps {
            let mut sub = vec![false; g.len()];
            for &v in &comp {
                sub[v] = true;
            }
            let mut found = None;
            for kk in 0..=k {
                if let Some(s) = search(g, &sub, undeletable, kk, meter) {
                    found = Some(s);
                    break;
                }
                if meter.exhausted() {
                    return None;
                }
            }
            let s = found?;
            k -= s.len() as isize;
            taken.extend(s);
        }
        return Some(taken);
    }
    if k == 0 {
        return None;
    }
    let cyc = g.shortest_cycle(&alive)?;
    for v in cyc {
        if undeletable[v] {
            continue;
        }
        alive[v] = false;
        if let Some(mut s) = search(g, &alive, undeletable, k - 1, meter) {
            s.push(v);
            s.extend(taken);
            return Some(s);
        }
        alive[v] = true;
        if meter.exhausted() {
            return None;
        }
    }
    None
}

/// Exact minimum FVS. Among the minimum sets the lexicographically smallest
/// sorted index sequence is returned.
pub fn min_fvs_exact(g: &Digraph, budget: &Budget) -> FvsResult {
    let meter = budget.meter();
    let n = g.len();
    let all = vec![true; n];
    let none = vec![false; n];
    let mut k = 0isize;
    let size = loop {
        if search(g, &all, &none, k, &meter).is_some() {
            break k;
        }
        if meter.exhausted() {
            return heuristic_fallback(g);
        }
        k += 1;
    };
    let mut chosen = Vec::new();
    let mut alive = all;
    let mut undeletable = none;
    for v in 0..n {
        if chosen.len() as isize == size {
            break;
        }
        alive[v] = false;
        let rest = size - chosen.len() as isize - 1;
        if search(g, &alive, &undeletable, rest, &meter).is_some() {
            chosen.push(v);
        } else {
            if meter.exhausted() {
                return heuristic_fallback(g);
            }
            alive[v] = true;
            undeletable[v] = true;
        }
    }
    FvsResult {
        set: chosen,
        optimal: true,
    }
}

fn heuristic_fallback(g: &Digraph) -> FvsResult {
    FvsResult {
        set: min_fvs_heuristic(g),
        optimal: false,
    }
}

/// Greedy FVS: take self-loops first, then repeatedly the vertex of largest
/// in-degree times out-degree inside its strongly connected component.
pub fn min_fvs_heuristic(g: &Digraph) -> Vec<usize> {
    let n = g.len();
    let mut alive = vec![true; n];
    let undeletable = vec![false; n];
    let mut taken = Vec::new();
    loop {
        let mut k = isize::MAX;
        reduce(g, &mut alive, &undeletable, &mut taken, &mut k);
        let comps: Vec<Vec<usize>> = g
            .sccs(&alive)
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if comps.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for comp in &comps {
            for &v in comp {
                let din = g.predecessors(v).filter(|u| comp.binary_search(u).is_ok()).count();
                let dout = g.successors(v).filter(|u| comp.binary_search(u).is_ok()).count();
                let score = din * dout;
                if best.is_none_or(|(s, b)| score > s || (score == s && v < b)) {
                    best = Some((score, v));
                }
            }
        }
        let v = best.unwrap().1;
        alive[v] = false;
        taken.push(v);
    }
    taken.sort_unstable();
    taken
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let mut g = Digraph::new(n);
        for i in 0..n {
            g.add_arc(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn single_cycle_takes_vertex_zero() {
        let r = min_fvs_exact(&cycle(5), &Budget::unlimited());
        assert_eq!(r.set, [0]);
        assert!(r.optimal);
    }

    #[test]
    fn self_loops_are_forced() {
        let mut g = Digraph::new(3);
        g.add_arc(2, 2);
        g.add_arc(0, 1);
        assert_eq!(min_fvs_exact(&g, &Budget::unlimited()).set, [2]);
        assert_eq!(min_fvs_heuristic(&g), [2]);
    }

    #[test]
    fn two_disjoint_cycles() {
        let mut g = Digraph::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)] {
            g.add_arc(u, v);
        }
        assert_eq!(min_fvs_exact(&g, &Budget::unlimited()).set, [0, 3]);
    }

    #[test]
    fn budget_falls_back() {
        let mut g = Digraph::new(6);
        for u in 0..6 {
            for v in 0..6 {
                if u != v {
                    g.add_arc(u, v);
                }
            }
        }
        let r = min_fvs_exact(&g, &Budget::steps(3));
        assert!(!r.optimal);
        let mut removed = vec![false; 6];
        for &v in &r.set {
            removed[v] = true;
        }
        assert!(g.is_acyclic_without(&removed));
        assert_eq!(min_fvs_exact(&g, &Budget::unlimited()).set, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn topo_tie_break() {
        let mut g = Digraph::new(4);
        g.add_arc(3, 0);
        let order = g.topo_order_by(&[], |v| v).unwrap();
        assert_eq!(order, [1, 2, 3, 0]);
    }
}
