//! Dense evaluation of small diagrams by pairwise tensor contraction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::diagram::{EdgeKind, NodeKind, ZxDiagram};
use crate::error::CoreError;
use crate::linalg::Matrix;

/// Largest rank an intermediate tensor may reach.
pub const INTERNAL_CAP: usize = 22;

#[derive(Clone, Debug)]
struct Tensor {
    /// Index labels; the first one is the most significant bit.
    labels: Vec<usize>,
    data: Vec<Complex64>,
}

impl Tensor {
    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<usize> = self
            .labels
            .iter()
            .copied()
            .filter(|l| other.labels.contains(l))
            .collect();
        let mut labels: Vec<usize> = self
            .labels
            .iter()
            .copied()
            .filter(|l| !shared.contains(l))
            .collect();
        labels.extend(other.labels.iter().copied().filter(|l| !shared.contains(l)));
        let r = labels.len();
        let s = shared.len();
        let pos = |ls: &[usize], l: usize| ls.iter().position(|&x| x == l).unwrap();
        // Bit position of each index of self/other inside (result ++ shared).
        let all: Vec<usize> = labels.iter().chain(&shared).copied().collect();
        let total = r + s;
        let map_a: Vec<usize> = self.labels.iter().map(|&l| total - 1 - pos(&all, l)).collect();
        let map_b: Vec<usize> = other.labels.iter().map(|&l| total - 1 - pos(&all, l)).collect();
        let idx = |map: &[usize], full: usize| {
            let k = map.len();
            let mut i = 0usize;
            for (j, &bit) in map.iter().enumerate() {
                if full >> bit & 1 == 1 {
                    i |= 1 << (k - 1 - j);
                }
            }
            i
        };
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << r];
        for (out, slot) in data.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for sh in 0..1usize << s {
                let full = out << s | sh;
                acc += self.data[idx(&map_a, full)] * other.data[idx(&map_b, full)];
            }
            *slot = acc;
        }
        Tensor { labels, data }
    }
}

fn spider_tensor(kind: NodeKind, phase: Complex64, labels: Vec<usize>) -> Tensor {
    let k = labels.len();
    let mut data = vec![Complex64::new(0.0, 0.0); 1 << k];
    match kind {
        NodeKind::Z => {
            data[0] += Complex64::new(1.0, 0.0);
            data[(1 << k) - 1] += phase;
        }
        _ => {
            let norm = libm::pow(2.0, -(k as f64) / 2.0);
            for (b, z) in data.iter_mut().enumerate() {
                let sign = if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                *z = (Complex64::new(1.0, 0.0) + phase * sign) * norm;
            }
        }
    }
    Tensor { labels, data }
}

/// Linear map of the diagram, outputs by rows and inputs by columns, with
/// port 0 as the most significant bit on each side. Scalars are kept but
/// carry no meaning beyond "nonzero".
pub fn evaluate_tensor(d: &ZxDiagram, cap: usize) -> Result<Matrix, CoreError> {
    d.validate()?;
    let ins = d.inputs();
    let outs = d.outputs();
    if ins.len() + outs.len() > cap {
        return Err(CoreError::CapExceeded {
            what: "tensor evaluation (boundary wires)",
            needed: ins.len() + outs.len(),
            cap,
        });
    }
    // Each edge end gets its own label; edges become 2-index tensors.
    let mut next = 0usize;
    let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut tensors = Vec::new();
    let h = core::f64::consts::FRAC_1_SQRT_2;
    for e in d.edges() {
        let (la, lb) = (next, next + 1);
        next += 2;
        ends.entry(e.a).or_default().push(la);
        ends.entry(e.b).or_default().push(lb);
        let c = |x: f64| Complex64::new(x, 0.0);
        let data = match e.kind {
            EdgeKind::Plain => vec![c(1.0), c(0.0), c(0.0), c(1.0)],
            EdgeKind::Hadamard => vec![c(h), c(h), c(h), c(-h)],
        };
        tensors.push(Tensor {
            labels: vec![la, lb],
            data,
        });
    }
    let mut open = BTreeMap::new();
    for (v, node) in d.nodes() {
        let labels = ends.remove(&v).unwrap_or_default();
        if node.kind.is_spider() {
            let p = Complex64::cis(node.phase.radians()?);
            tensors.push(spider_tensor(node.kind, p, labels));
        } else {
            open.insert(v, labels[0]);
        }
    }
    let result = contract_all(tensors)?;
    let wanted: Vec<usize> = outs.iter().chain(&ins).map(|v| open[v]).collect();
    let mut m = Matrix::zeros(1 << outs.len(), 1 << ins.len());
    let k = wanted.len();
    let pos: Vec<usize> = wanted
        .iter()
        .map(|l| result.labels.iter().position(|x| x == l).unwrap())
        .collect();
    for full in 0..1usize << k {
        let mut i = 0usize;
        for (j, &p) in pos.iter().enumerate() {
            if full >> (k - 1 - j) & 1 == 1 {
                i |= 1 << (k - 1 - p);
            }
        }
        let row = full >> ins.len();
        let col = full & ((1 << ins.len()) - 1);
        m.set(row, col, result.data[i]);
    }
    Ok(m)
}

fn contract_all(mut ts: Vec<Tensor>) -> Result<Tensor, CoreError> {
    if ts.is_empty() {
        return Ok(Tensor {
            labels: Vec::new(),
            data: vec![Complex64::new(1.0, 0.0)],
        });
    }
    while ts.len() > 1 {
        // Cheapest connected pair first; disconnected pieces last.
        let mut best: Option<(usize, usize, usize, bool)> = None;
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                let shared = ts[i].labels.iter().filter(|l| ts[j].labels.contains(l)).count();
                let rank = ts[i].labels.len() + ts[j].labels.len() - 2 * shared;
                let connected = shared > 0;
                let better = match best {
                    None => true,
                    Some((_, _, r, c)) => (connected && !c) || (connected == c && rank < r),
                };
                if better {
                    best = Some((i, j, rank, connected));
                }
            }
        }
        let (i, j, rank, _) = best.unwrap();
        if rank > INTERNAL_CAP {
            return Err(CoreError::CapExceeded {
                what: "tensor evaluation (intermediate rank)",
                needed: rank,
                cap: INTERNAL_CAP,
            });
        }
        let b = ts.swap_remove(j);
        let a = ts.swap_remove(i);
        ts.push(a.contract(&b));
    }
    Ok(ts.pop().unwrap())
}
