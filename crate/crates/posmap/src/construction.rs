//! The Kossakowski construction: orthogonal matrices embedded into
//! nonnegative coefficient matrices of positive diagonal-type maps.
//!
//! An orthogonal `R` of dimension `n-1` defines coefficients
//!
//! ```text
//! a_ij = (n-1)/n + sum_{ab} f^(a)_i R_ab f^(b)_j ,
//! ```
//!
//! where `f^(a)_i = <e_i| F_a |e_i>` are the diagonals of the traceless
//! generators `F_a`. The resulting map is positive for every orthogonal `R`.
//! Equivalently, `b_ij = a_ij - 1` is an `n x n` orthogonal matrix with all
//! row and column sums equal to -1; the two pictures convert back and forth
//! here. Note the full index range `0..n` is summed in every row/column-sum
//! constraint.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::map::DiagonalTypeMap;
use crate::matrix::{orthogonality_residual, ComplexMatrix};
use crate::tol;

/// Real square matrix with orthonormal rows, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix {
    dim: usize,
    m: Vec<f64>,
}

impl OrthogonalMatrix {
    /// Validates `M M^T = I` to within [`tol::ORTHO_TOL`].
    pub fn new(dim: usize, m: Vec<f64>) -> Result<Self> {
        if dim == 0 || dim > tol::MAX_DIM {
            return Err(Error::InvalidDimension { n: dim, min: 1 });
        }
        if m.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: m.len(),
            });
        }
        if !m.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "orthogonal matrix",
            });
        }
        let residual = orthogonality_residual(dim, &m);
        if residual > tol::ORTHO_TOL {
            return Err(Error::NotOrthogonal {
                residual,
                tol: tol::ORTHO_TOL,
            });
        }
        Ok(Self { dim, m })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        let mut m = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            m.extend_from_slice(row);
        }
        Self::new(dim, m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1.0;
        }
        Self { dim, m }
    }

    /// Block-diagonal rotation: 2x2 blocks `[[cos f, -sin f], [sin f, cos f]]`
    /// for each angle, with a trailing 1 when `dim` is odd. Expects exactly
    /// `dim / 2` angles.
    ///
    /// With this orientation the n = 3 construction reproduces the circulant
    /// triple `a = 2/3 (1 + cos f)`, `b = 1/3 (2 - cos f - sqrt(3) sin f)`,
    /// `c = 1/3 (2 - cos f + sqrt(3) sin f)`.
    pub fn rotation_from_angles(dim: usize, angles: &[f64]) -> Result<Self> {
        if dim == 0 || dim > tol::MAX_DIM {
            return Err(Error::InvalidDimension { n: dim, min: 1 });
        }
        if angles.len() != dim / 2 {
            return Err(Error::PhaseCount {
                n: dim,
                expected: dim / 2,
                actual: angles.len(),
            });
        }
        let mut m = vec![0.0; dim * dim];
        for (k, &phi) in angles.iter().enumerate() {
            let (s, c) = phi.sin_cos();
            let r = 2 * k;
            m[r * dim + r] = c;
            m[r * dim + r + 1] = -s;
            m[(r + 1) * dim + r] = s;
            m[(r + 1) * dim + r + 1] = c;
        }
        if dim % 2 == 1 {
            m[dim * dim - 1] = 1.0;
        }
        Self::new(dim, m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.m[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = vec![0.0; self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[j * self.dim + i] = self.entry(i, j);
            }
        }
        Self { dim: self.dim, m }
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.m[i * self.dim..(i + 1) * self.dim].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> f64 {
        (0..self.dim).map(|i| self.entry(i, j)).sum()
    }
}

impl Serialize for OrthogonalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OrthogonalMatrix", 2)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("m", &self.rows())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for OrthogonalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            dim: usize,
            m: Vec<Vec<f64>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.m.len() != wire.dim {
            return Err(D::Error::custom(format!(
                "field \"m\" has {} rows, expected dim = {}",
                wire.m.len(),
                wire.dim
            )));
        }
        OrthogonalMatrix::from_rows(wire.m).map_err(D::Error::custom)
    }
}

/// Haar-distributed random orthogonal matrix: QR of an i.i.d. standard
/// Gaussian matrix with the signs of the R-diagonal fixed positive.
pub fn haar_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> OrthogonalMatrix {
    assert!((1..=tol::MAX_DIM).contains(&dim));
    let g = nalgebra::DMatrix::<f64>::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    let m = (0..dim * dim).map(|k| q[(k / dim, k % dim)]).collect();
    OrthogonalMatrix::new(dim, m).expect("QR factor is orthogonal")
}

/// The diagonal traceless generators `F_l`, `l = 1..n-1`, as matrices:
/// `F_l = (E_00 + ... + E_{l-1,l-1} - l E_ll) / sqrt(l (l+1))`.
/// They are orthonormal under the trace inner product.
pub fn f_basis(n: usize) -> Result<Vec<ComplexMatrix>> {
    Ok(f_vectors(n)?
        .iter()
        .map(|f| ComplexMatrix::diagonal(f))
        .collect())
}

/// Diagonals of the generators: `f^(l)_i = <e_i| F_l |e_i>`. Together with
/// `e = (1,...,1)/sqrt(n)` these form an orthonormal basis of `R^n`; on
/// their own they span the hyperplane orthogonal to `e`.
pub fn f_vectors(n: usize) -> Result<Vec<Vec<f64>>> {
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension { n, min: 2 });
    }
    let mut out = Vec::with_capacity(n - 1);
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut f = vec![0.0; n];
        f[..l].fill(norm);
        f[l] = -(l as f64) * norm;
        out.push(f);
    }
    Ok(out)
}

/// Builds the coefficient matrix of the positive map defined by an
/// orthogonal `R` of dimension `n - 1`.
///
/// The output has all coefficients in `[0, 2]`, every row and column sum
/// equal to `n - 1` (so `a / (n-1)` is doubly stochastic), and satisfies the
/// row-product criterion checked by [`verify_row_products`].
pub fn kossakowski_from_orthogonal(r: &OrthogonalMatrix) -> DiagonalTypeMap {
    let n = r.dim() + 1;
    let f = f_vectors(n).expect("dim validated by OrthogonalMatrix");
    let offset = (n - 1) as f64 / n as f64;
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for alpha in 0..n - 1 {
                for beta in 0..n - 1 {
                    s += f[alpha][i] * r.entry(alpha, beta) * f[beta][j];
                }
            }
            a[i * n + j] = offset + s;
        }
    }
    DiagonalTypeMap::from_flat(n, a).expect("construction output is finite")
}

/// Outcome of the row-product criterion
/// `sum_k a_ik a_jk = delta_ij + n - 2`.
#[derive(Debug, Clone, Copy)]
pub struct RowProductCheck {
    pub ok: bool,
    pub max_residual: f64,
}

/// Checks whether a coefficient matrix comes from the orthogonal-matrix
/// construction: true iff `max_ij |sum_k a_ik a_jk - delta_ij - (n-2)|`
/// is at most [`tol::ROW_PRODUCT_TOL`].
pub fn verify_row_products(map: &DiagonalTypeMap) -> RowProductCheck {
    let n = map.n();
    let shift = (n - 2) as f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let dot: f64 = (0..n).map(|k| map.coeff(i, k) * map.coeff(j, k)).sum();
            let target = if i == j { 1.0 + shift } else { shift };
            worst = worst.max((dot - target).abs());
        }
    }
    RowProductCheck {
        ok: worst <= tol::ROW_PRODUCT_TOL,
        max_residual: worst,
    }
}

/// Shifts a construction-class coefficient matrix to its orthogonal picture
/// `b_ij = a_ij - 1`. Rejects input failing the row-product criterion.
pub fn b_from_a(map: &DiagonalTypeMap) -> Result<OrthogonalMatrix> {
    let check = verify_row_products(map);
    if !check.ok {
        return Err(Error::RowProductCriterion {
            max_residual: check.max_residual,
        });
    }
    let n = map.n();
    let b = map.coeffs().iter().map(|x| x - 1.0).collect();
    OrthogonalMatrix::new(n, b)
}

/// Inverse of [`b_from_a`]: requires an orthogonal matrix whose row and
/// column sums all equal -1, and returns the map with `a_ij = b_ij + 1`.
/// Orthogonality forces `|b_ij| <= 1`, so the coefficients are nonnegative.
pub fn a_from_b(b: &OrthogonalMatrix) -> Result<DiagonalTypeMap> {
    let n = b.dim();
    for i in 0..n {
        let rs = b.row_sum(i);
        if (rs + 1.0).abs() > tol::ORTHO_TOL {
            return Err(Error::SumConstraint {
                axis: "row",
                index: i,
                sum: rs,
                expected: -1.0,
            });
        }
        let cs = b.col_sum(i);
        if (cs + 1.0).abs() > tol::ORTHO_TOL {
            return Err(Error::SumConstraint {
                axis: "column",
                index: i,
                sum: cs,
                expected: -1.0,
            });
        }
    }
    let a = b.entries().iter().map(|x| x + 1.0).collect();
    DiagonalTypeMap::from_flat(n, a)
}

/// Relabels the map by permuting columns of its coefficient matrix,
/// `a'_ij = a_{i, perm[j]}`. Permutation preserves the row-product
/// criterion, so construction-class maps stay in the class.
pub fn permute_columns(map: &DiagonalTypeMap, perm: &[usize]) -> Result<DiagonalTypeMap> {
    let n = map.n();
    let mut seen = vec![false; n];
    if perm.len() != n
        || !perm
            .iter()
            .all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidPermutation { n });
    }
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = map.coeff(i, perm[j]);
        }
    }
    DiagonalTypeMap::from_flat(n, a)
}

/// An orthonormal basis `b^(0), ..., b^(n-1)` of `R^n` with
/// `(b^(i), e) = -1/sqrt(n)` for every `i`, where `e = (1,...,1)/sqrt(n)`.
/// Each such basis defines exactly one construction-class map.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisFamily {
    n: usize,
    vectors: Vec<Vec<f64>>,
}

impl BasisFamily {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = vectors.len();
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        let inv_sqrt_n = 1.0 / (n as f64).sqrt();
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidBasis {
                    detail: format!("vector {i} has length {}, expected {n}", v.len()),
                });
            }
            let dot_e: f64 = v.iter().sum::<f64>() * inv_sqrt_n;
            if (dot_e + inv_sqrt_n).abs() > tol::ORTHO_TOL {
                return Err(Error::InvalidBasis {
                    detail: format!("(b^({i}), e) = {dot_e:.12}, expected {:.12}", -inv_sqrt_n),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(x, y)| x * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (dot - target).abs() > tol::ORTHO_TOL {
                    return Err(Error::InvalidBasis {
                        detail: format!("(b^({i}), b^({j})) = {dot:.12}, expected {target}"),
                    });
                }
            }
        }
        Ok(Self { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

/// `n` equal-length vectors in the hyperplane orthogonal to `e`, with
/// squared length `1 - 1/n` and pairwise angle `cos = -1/(n-1)`: the
/// vertices of a regular simplex centered at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFamily {
    n: usize,
    vectors: Vec<Vec<f64>>,
}

impl FrameFamily {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = vectors.len();
        if !(2..=tol::MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, min: 2 });
        }
        let nf = n as f64;
        let norm_sq = 1.0 - 1.0 / nf;
        let cos_target = -1.0 / (nf - 1.0);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidFrame {
                    detail: format!("vector {i} has length {}, expected {n}", v.len()),
                });
            }
            let sq: f64 = v.iter().map(|x| x * x).sum();
            if (sq - norm_sq).abs() > tol::ORTHO_TOL {
                return Err(Error::InvalidFrame {
                    detail: format!("|g^({i})|^2 = {sq:.12}, expected {norm_sq:.12}"),
                });
            }
            let sum: f64 = v.iter().sum();
            if sum.abs() > tol::ORTHO_TOL * nf.sqrt() {
                return Err(Error::InvalidFrame {
                    detail: format!("g^({i}) is not orthogonal to e: (g, e) sqrt(n) = {sum:.12}"),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(x, y)| x * y).sum();
                let cos = dot / norm_sq;
                if (cos - cos_target).abs() > tol::ORTHO_TOL {
                    return Err(Error::InvalidFrame {
                        detail: format!(
                            "cos angle between g^({i}) and g^({j}) = {cos:.12}, expected {cos_target:.12}"
                        ),
                    });
                }
            }
        }
        Ok(Self { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Gram matrix, row-major. Equals `I - J/n` exactly in real arithmetic
    /// for the canonical frame.
    pub fn gram(&self) -> Vec<f64> {
        let n = self.n;
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = self.vectors[i]
                    .iter()
                    .zip(&self.vectors[j])
                    .map(|(x, y)| x * y)
                    .sum();
            }
        }
        g
    }
}

/// Canonical equiangular frame: `g^(i) = e_i - (1/n) 1`, the projections of
/// the standard basis onto the hyperplane orthogonal to `e`.
pub fn equiangular_frame(n: usize) -> Result<FrameFamily> {
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension { n, min: 2 });
    }
    let shift = 1.0 / n as f64;
    let vectors = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 - shift } else { -shift })
                .collect()
        })
        .collect();
    FrameFamily::new(vectors)
}

/// Shifts a frame to an orthonormal basis: `b^(i) = g^(i) - e / sqrt(n)`.
pub fn basis_from_frame(frame: &FrameFamily) -> BasisFamily {
    let n = frame.n();
    let shift = 1.0 / n as f64; // e_j / sqrt(n) = 1/n
    let vectors = frame
        .vectors()
        .iter()
        .map(|g| g.iter().map(|x| x - shift).collect())
        .collect();
    BasisFamily::new(vectors).expect("frame shift yields an orthonormal basis")
}

/// The map defined by an orthonormal basis with `(b^(i), e) = -1/sqrt(n)`:
/// rows of the `b`-matrix are the basis vectors, `b_ij = b^(i)_j`.
pub fn map_from_basis(basis: &BasisFamily) -> Result<DiagonalTypeMap> {
    let b = OrthogonalMatrix::from_rows(basis.vectors().to_vec())?;
    a_from_b(&b)
}

/// Embeds an orthogonal `R` of dimension `n-1` into an `n x n` orthogonal
/// matrix with row and column sums -1 by extending it with a reflection
/// along `e`: `b = S^T diag(-1, R) S`, where the rows of `S` are `e`
/// followed by an orthonormal basis of the hyperplane orthogonal to `e`.
///
/// With the default hyperplane basis (the generator diagonals of
/// [`f_vectors`]) this reproduces [`kossakowski_from_orthogonal`] exactly:
/// `a_from_b(rotation_embedding(R, None)) = kossakowski_from_orthogonal(R)`.
pub fn rotation_embedding(
    r: &OrthogonalMatrix,
    hyperplane_basis: Option<&[Vec<f64>]>,
) -> Result<OrthogonalMatrix> {
    let n = r.dim() + 1;
    let default_basis;
    let basis: &[Vec<f64>] = match hyperplane_basis {
        Some(basis) => {
            if basis.len() != n - 1 {
                return Err(Error::InvalidBasis {
                    detail: format!("expected {} hyperplane vectors, got {}", n - 1, basis.len()),
                });
            }
            for (alpha, v) in basis.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::InvalidBasis {
                        detail: format!("vector {alpha} has length {}, expected {n}", v.len()),
                    });
                }
                let sum: f64 = v.iter().sum();
                if sum.abs() > tol::ORTHO_TOL * (n as f64).sqrt() {
                    return Err(Error::InvalidBasis {
                        detail: format!("vector {alpha} is not orthogonal to e"),
                    });
                }
            }
            for i in 0..n - 1 {
                for j in i..n - 1 {
                    let dot: f64 = basis[i].iter().zip(&basis[j]).map(|(x, y)| x * y).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    if (dot - target).abs() > tol::ORTHO_TOL {
                        return Err(Error::InvalidBasis {
                            detail: format!("(f^({i}), f^({j})) = {dot:.12}, expected {target}"),
                        });
                    }
                }
            }
            basis
        }
        None => {
            default_basis = f_vectors(n)?;
            &default_basis
        }
    };

    // b_ij = -S_0i S_0j + sum_ab S_ai R_ab S_bj, with S_0 = e.
    // Accumulated as offset + sum - 1 so the default-basis path runs the
    // exact float sequence of kossakowski_from_orthogonal followed by the
    // shift b = a - 1.
    let offset = (n - 1) as f64 / n as f64;
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for alpha in 0..n - 1 {
                for beta in 0..n - 1 {
                    s += basis[alpha][i] * r.entry(alpha, beta) * basis[beta][j];
                }
            }
            b[i * n + j] = offset + s - 1.0;
        }
    }
    OrthogonalMatrix::new(n, b)
}
