//! Exhaustive search over subsets and permutations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::fvs::Digraph;
use crate::layout::{Constraints, Graph, WidthKind};

/// Largest vertex count accepted by [`brute_fvs`].
pub const FVS_CAP: usize = 16;
/// Largest number of free vertices accepted by [`brute_width`].
pub const WIDTH_CAP: usize = 10;

fn acyclic(g: &Digraph, removed: &[bool]) -> bool {
    // Repeatedly peel vertices without live predecessors.
    let n = g.len();
    let mut gone = removed.to_vec();
    loop {
        let mut progress = false;
        for v in 0..n {
            if !gone[v] && !g.predecessors(v).any(|u| !gone[u]) {
                gone[v] = true;
                progress = true;
            }
        }
        if !progress {
            return gone.iter().all(|&x| x);
        }
    }
}

/// Next k-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lexicographically first minimum feedback vertex set, by enumeration.
pub fn brute_fvs(g: &Digraph) -> Result<Vec<usize>, CoreError> {
    let n = g.len();
    if n > FVS_CAP {
        return Err(CoreError::CapExceeded {
            what: "brute-force FVS",
            needed: n,
            cap: FVS_CAP,
        });
    }
    for k in 0..=n {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let mut removed = vec![false; n];
            for &v in &c {
                removed[v] = true;
            }
            if acyclic(g, &removed) {
                return Ok(c);
            }
            if k == 0 || !next_combination(&mut c, n) {
                break;
            }
        }
    }
    unreachable!("removing every vertex leaves an acyclic graph")
}

/// Width of the prefix `placed` straight from the definitions.
fn prefix_cost(g: &Graph, kind: WidthKind, placed: &[bool]) -> usize {
    match kind {
        WidthKind::Cutwidth => g
            .edges()
            .iter()
            .filter(|&&(u, v)| placed[u] != placed[v])
            .count(),
        WidthKind::Pathwidth => (0..g.len())
            .filter(|&v| placed[v] && g.neighbors(v).iter().any(|&u| !placed[u]))
            .count(),
    }
}

/// Minimum width over every ordering that respects `c`, by enumerating the
/// permutations of the free vertices.
pub fn brute_width(g: &Graph, kind: WidthKind, c: &Constraints) -> Result<usize, CoreError> {
    let n = g.len();
    let mut pinned = vec![false; n];
    for &v in c.head.iter().chain(&c.tail) {
        if pinned[v] {
            return Err(CoreError::Infeasible(alloc::format!("vertex {v} is pinned twice")));
        }
        pinned[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !pinned[v]).collect();
    if free.len() > WIDTH_CAP {
        return Err(CoreError::CapExceeded {
            what: "brute-force width (free vertices)",
            needed: free.len(),
            cap: WIDTH_CAP,
        });
    }
    let mut placed = vec![false; n];
    let mut start = 0;
    for &v in &c.head {
        placed[v] = true;
        start = start.max(prefix_cost(g, kind, &placed));
    }
    let mut best = usize::MAX;
    let mut used = vec![false; free.len()];
    permute(g, kind, c, &free, &mut used, &mut placed, start, &mut best);
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn permute(
    g: &Graph,
    kind: WidthKind,
    c: &Constraints,
    free: &[usize],
    used: &mut [bool],
    placed: &mut [bool],
    so_far: usize,
    best: &mut usize,
) {
    if so_far >= *best {
        return;
    }
    if used.iter().all(|&u| u) {
        let mut w = so_far;
        let mut p = placed.to_vec();
        for &v in &c.tail {
            w = w.max(prefix_cost(g, kind, &p));
            p[v] = true;
        }
        *best = (*best).min(w);
        return;
    }
    for i in 0..free.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        placed[free[i]] = true;
        let w = so_far.max(prefix_cost(g, kind, placed));
        permute(g, kind, c, free, used, placed, w, best);
        placed[free[i]] = false;
        used[i] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_values() {
        let mut k4 = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v);
            }
        }
        let none = Constraints::default();
        assert_eq!(brute_width(&k4, WidthKind::Cutwidth, &none).unwrap(), 4);
        assert_eq!(brute_width(&k4, WidthKind::Pathwidth, &none).unwrap(), 3);

        let mut g = Digraph::new(3);
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        g.add_arc(2, 1);
        assert_eq!(brute_fvs(&g).unwrap(), [1]);
    }
}
