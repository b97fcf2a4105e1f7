//! Dense square complex matrices and eigenvalue-based PSD tests.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::tol;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Matrix unit `E_ij = |e_i><e_j|`.
    pub fn basis_unit(dim: usize, i: usize, j: usize) -> Self {
        assert!(i < dim && j < dim, "basis unit index out of range");
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex64::ONE;
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-1 projector `|y><y|`.
    pub fn outer(y: &[Complex64]) -> Self {
        let mut m = Self::zeros(y.len());
        for i in 0..y.len() {
            for j in 0..y.len() {
                m[(i, j)] = y[i] * y[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Quadratic form `<x| M |x>`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.dim);
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim {
            let mut row = Complex64::ZERO;
            for j in 0..self.dim {
                row += self[(i, j)] * x[j];
            }
            acc += x[i].conj() * row;
        }
        acc
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)].norm()).sum())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = nalgebra::DMatrix::from_fn(self.dim, self.dim, |i, j| self[(i, j)]);
        let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(|a, b| a.total_cmp(b));
        eigs
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues()[0]
    }

    /// Scale-aware PSD test for Hermitian matrices: accepts iff
    /// `lambda_min >= -eps` with `eps = PSD_EPS_SCALE * max(1, ||M||_inf)`.
    pub fn is_psd(&self) -> bool {
        let eps = tol::PSD_EPS_SCALE * self.norm_inf().max(1.0);
        self.min_eigenvalue() >= -eps
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, c: Complex64) -> ComplexMatrix {
        self.scale(c)
    }
}

/// Eigenvalues of a real symmetric matrix (row-major, `n x n`), ascending.
pub(crate) fn symmetric_eigenvalues(n: usize, data: &[f64]) -> Vec<f64> {
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| data[i * n + j]);
    let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.total_cmp(b));
    eigs
}

/// Max entry of `|M M^T - I|` for a real row-major `n x n` matrix.
pub(crate) fn orthogonality_residual(n: usize, data: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| data[i * n + k] * data[j * n + k]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_unit_and_trace() {
        let e01 = ComplexMatrix::basis_unit(3, 0, 1);
        assert_eq!(e01[(0, 1)], Complex64::ONE);
        assert_eq!(e01.trace(), Complex64::ZERO);
        assert_eq!(ComplexMatrix::identity(4).trace(), Complex64::new(4.0, 0.0));
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_x() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::ONE;
        m[(1, 0)] = Complex64::ONE;
        let eigs = m.hermitian_eigenvalues();
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
        assert!(!m.is_psd());
    }

    #[test]
    fn psd_accepts_boundary() {
        // eigenvalues 0 and 2: on the PSD boundary
        let m = ComplexMatrix::from_fn(2, |i, j| {
            Complex64::new(if i == j { 1.0 } else { -1.0 }, 0.0)
        });
        assert!(m.is_psd());
    }

    #[test]
    fn quadratic_form_matches_outer() {
        let y = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let p = ComplexMatrix::outer(&y);
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        // <x|y><y|x> = |<y|x>|^2 = 0.36
        let v = p.quadratic_form(&x);
        assert!((v.re - 0.36).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn orthogonality_residual_detects() {
        let id = [1.0, 0.0, 0.0, 1.0];
        assert!(orthogonality_residual(2, &id) == 0.0);
        let skew = [1.0, 0.1, 0.0, 1.0];
        assert!(orthogonality_residual(2, &skew) > 0.09);
    }
}
