//! Minimal dense complex matrix, used for quadrature verification and the
//! measured equator transition. Row-major storage.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Largest entrywise deviation from the identity.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((self.get(r, c) - want).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut worst = 0.0f64;
        for (a, b) in self.data.iter().zip(&other.data) {
            worst = worst.max((a - b).norm());
        }
        worst
    }

    /// `max(|T T* - I|, |T* T - I|)` entrywise; zero for a unitary square
    /// matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let adj = self.adjoint();
        self.mul(&adj)
            .identity_defect()
            .max(adj.mul(self).identity_defect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_unitary() {
        let mut m = DenseMat::zeros(4, 4);
        for i in 0..4 {
            m.set(i, i, Complex64::ONE);
        }
        assert_eq!(m.unitarity_defect(), 0.0);
        assert_eq!(m.identity_defect(), 0.0);
    }

    #[test]
    fn adjoint_transposes_and_conjugates() {
        let mut m = DenseMat::zeros(2, 3);
        m.set(0, 2, Complex64::new(1.0, 2.0));
        let a = m.adjoint();
        assert_eq!(a.get(2, 0), Complex64::new(1.0, -2.0));
        assert_eq!(a.rows(), 3);
    }
}
