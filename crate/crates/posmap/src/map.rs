//! Diagonal-type maps on `M_n(C)` and their derived matrices.
//!
//! A diagonal-type map is determined by a real `n x n` coefficient matrix
//! `a`: it sends the diagonal unit `E_ii` to `sum_j a_ij E_jj` and negates
//! every off-diagonal unit, `E_ij -> -E_ij` for `i != j`. Only the diagonal
//! part of the input is transformed non-trivially.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{symmetric_eigenvalues, ComplexMatrix};
use crate::tol;

/// A diagonal-type map, stored as its dense row-major coefficient matrix.
///
/// The map is Hermiticity-preserving exactly because the coefficients are
/// real; construction rejects non-finite entries. Coefficient signs are not
/// constrained here: positivity analysis lives in [`crate::positivity`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTypeMap {
    n: usize,
    a: Vec<f64>,
}

impl DiagonalTypeMap {
    /// Builds a map from coefficient rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        let mut a = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            a.extend_from_slice(row);
        }
        Self::from_flat(n, a)
    }

    /// Builds a map from a flat row-major coefficient slice.
    pub fn from_flat(n: usize, a: Vec<f64>) -> Result<Self> {
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        if a.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: a.len(),
            });
        }
        if !a.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "coefficient matrix",
            });
        }
        Ok(Self { n, a })
    }

    /// Builds the circulant map with first row `alphas`, i.e.
    /// `a_ij = alpha_((j - i) mod n)`. Row `i` is row 0 cyclically shifted
    /// right by `i`, matching the standard circulant layout.
    pub fn circulant(alphas: &[f64]) -> Result<Self> {
        let n = alphas.len();
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = alphas[(j + n - i) % n];
            }
        }
        Self::from_flat(n, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn min_coeff(&self) -> f64 {
        self.a.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.a[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.coeff(i, j)).sum()
    }

    /// Sum of all coefficients (equals the trace of the Choi matrix).
    pub fn coeff_sum(&self) -> f64 {
        self.a.iter().sum()
    }

    /// Applies the map to a matrix of the same dimension.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out[(i, j)] = -x[(i, j)];
                }
            }
        }
        // diagonal: out_jj = sum_i a_ij x_ii
        for j in 0..self.n {
            let mut acc = Complex64::ZERO;
            for i in 0..self.n {
                acc += self.coeff(i, j) * x[(i, i)];
            }
            out[(j, j)] = acc;
        }
        Ok(out)
    }

    /// The matrix deciding complete positivity: `d_ii = a_ii`, `d_ij = -1`
    /// for `i != j`. The map is completely positive iff this matrix is PSD
    /// (given nonnegative coefficients).
    pub fn d_matrix(&self) -> DMatrix {
        let mut entries = vec![-1.0; self.n * self.n];
        for i in 0..self.n {
            entries[i * self.n + i] = self.coeff(i, i);
        }
        DMatrix { n: self.n, entries }
    }

    /// Choi matrix `C = sum_ij E_ij (x) Lambda(E_ij)`, dimension `n^2`.
    ///
    /// Index convention: `C[(i*n + k)][(j*n + l)] = <e_k| Lambda(E_ij) |e_l>`,
    /// i.e. block `(i, j)` holds the image of `E_ij`.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        let n = self.n;
        let mut c = ComplexMatrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    // Lambda(E_ii) = sum_k a_ik E_kk
                    for k in 0..n {
                        c[(i * n + k, i * n + k)] = Complex64::new(self.coeff(i, k), 0.0);
                    }
                } else {
                    // Lambda(E_ij) = -E_ij
                    c[(i * n + i, j * n + j)] = -Complex64::ONE;
                }
            }
        }
        c
    }
}

/// The `n x n` real symmetric matrix of the complete-positivity criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct DMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        symmetric_eigenvalues(self.n, &self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Scale-aware PSD test, same convention as
    /// [`ComplexMatrix::is_psd`](crate::matrix::ComplexMatrix::is_psd).
    pub fn is_psd(&self) -> bool {
        let norm_inf = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).abs()).sum())
            .fold(0.0f64, f64::max);
        let eps = tol::PSD_EPS_SCALE * norm_inf.max(1.0);
        self.min_eigenvalue() >= -eps
    }
}

// JSON interchange: {"n": <int>, "a": [[row0], [row1], ...]}, row-major.

impl Serialize for DiagonalTypeMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DiagonalTypeMap", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("a", &self.rows())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for DiagonalTypeMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            a: Vec<Vec<f64>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.a.len() != wire.n {
            return Err(D::Error::custom(format!(
                "field \"a\" has {} rows, expected n = {}",
                wire.a.len(),
                wire.n
            )));
        }
        DiagonalTypeMap::from_rows(wire.a).map_err(D::Error::custom)
    }
}
