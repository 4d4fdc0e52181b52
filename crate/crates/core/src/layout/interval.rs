//! Interval layouts: turning a vertex ordering into qubit tracks.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::graph::{Graph, Ordering};

/// Position of the vertex and of its last neighbour (itself if none).
pub fn interval(g: &Graph, f: &Ordering, v: usize) -> (usize, usize) {
    let end = g
        .neighbors(v)
        .iter()
        .map(|&u| f.rank(u))
        .chain(core::iter::once(f.rank(v)))
        .max()
        .unwrap();
    (f.rank(v), end)
}

/// First-fit track assignment of the closed intervals, taken in order of
/// their left ends. Uses at most `vsep_of(g, f) + 1` tracks.
pub fn interval_layout(g: &Graph, f: &Ordering) -> (Vec<usize>, usize) {
    let n = g.len();
    let mut track = vec![0usize; n];
    let mut free: BTreeSet<usize> = BTreeSet::new();
    // (end, track) of intervals still open.
    let mut open: Vec<(usize, usize)> = Vec::new();
    let mut count = 0;
    for &v in f.order() {
        let (start, end) = interval(g, f, v);
        open.retain(|&(e, t)| {
            if e < start {
                free.insert(t);
                false
            } else {
                true
            }
        });
        let t = match free.pop_first() {
            Some(t) => t,
            None => {
                count += 1;
                count - 1
            }
        };
        track[v] = t;
        open.push((end, t));
    }
    (track, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::vsep_of;

    #[test]
    fn path_uses_two_tracks() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let f = Ordering::identity(4);
        let (t, k) = interval_layout(&g, &f);
        assert_eq!(k, 2);
        assert_eq!(vsep_of(&g, &f), 1);
        assert_ne!(t[0], t[1]);
        assert_eq!(t[0], t[2]);
    }
}
