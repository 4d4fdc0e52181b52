//! Small dense complex matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.norm() <= tol)
    }
}

/// Largest entrywise deviation between `a` and `b` after scaling both to
/// unit norm and aligning the global phase. `None` if shapes differ or
/// exactly one of them vanishes.
pub fn distance_up_to_scalar(a: &Matrix, b: &Matrix) -> Option<f64> {
    if a.rows != b.rows || a.cols != b.cols {
        return None;
    }
    let (na, nb) = (a.frobenius(), b.frobenius());
    let tiny = 1e-12;
    match (na < tiny, nb < tiny) {
        (true, true) => return Some(0.0),
        (false, false) => {}
        _ => return None,
    }
    // Phase from the inner product <a, b>.
    let ip: Complex64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| x.conj() * y)
        .sum();
    let phase = if ip.norm() < tiny {
        Complex64::new(1.0, 0.0)
    } else {
        ip / ip.norm()
    };
    let dev = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x * phase / na - y / nb).norm())
        .fold(0.0, f64::max);
    Some(dev)
}

pub fn equal_up_to_scalar(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    distance_up_to_scalar(a, b).is_some_and(|d| d < tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_equivalence() {
        let a = Matrix::identity(2);
        let mut b = Matrix::identity(2);
        for z in &mut b.data {
            *z *= Complex64::new(0.0, 3.0);
        }
        assert!(equal_up_to_scalar(&a, &b, 1e-12));
        b.set(1, 1, Complex64::new(0.0, -3.0));
        assert!(!equal_up_to_scalar(&a, &b, 1e-3));
    }
}
