//! Sets of boolean variables, used as GF(2) parities.

use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity {
    words: Vec<u64>,
}

impl Parity {
    pub fn new() -> Self {
        Parity::default()
    }

    pub fn single(v: usize) -> Self {
        let mut p = Parity::new();
        p.flip(v);
        p
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        let mut p = Parity::new();
        for v in vars {
            p.flip(v);
        }
        p
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn flip(&mut self, v: usize) {
        let i = v / 64;
        if self.words.len() <= i {
            self.words.resize(i + 1, 0);
        }
        self.words[i] ^= 1 << (v % 64);
        self.trim();
    }

    pub fn xor_with(&mut self, other: &Parity) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Number of variables in both parities.
    pub fn overlap(&self, other: &Parity) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The variable, if the parity has exactly one.
    pub fn as_single(&self) -> Option<usize> {
        (self.len() == 1).then(|| self.iter().next().unwrap())
    }

    pub fn min_var(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl fmt::Debug for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An affine parity: `vars XOR constant`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Affine {
    pub vars: Parity,
    pub constant: bool,
}

impl Affine {
    pub fn var(v: usize) -> Self {
        Affine {
            vars: Parity::single(v),
            constant: false,
        }
    }

    pub fn zero() -> Self {
        Affine::default()
    }

    pub fn xor_with(&mut self, other: &Affine) {
        self.vars.xor_with(&other.vars);
        self.constant ^= other.constant;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_and_iter() {
        let mut a = Parity::from_vars([1, 70, 3]);
        let b = Parity::from_vars([70, 5]);
        a.xor_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), [1, 3, 5]);
        a.xor_with(&Parity::from_vars([1, 3, 5]));
        assert!(a.is_empty());
        assert_eq!(a, Parity::new());
    }
}
