//! Numerical tolerances shared across the crate.
//!
//! Everything here assumes `f64` arithmetic on matrices of dimension at most
//! [`MAX_DIM`], where accumulated rounding stays far below the loosest bound.

/// Largest supported matrix dimension. The objects of interest are small;
/// dense storage and dense eigensolvers are used throughout.
pub const MAX_DIM: usize = 64;

/// Tolerance for algebraic identities that hold exactly in real arithmetic
/// (round-trips, closed-form coefficient formulas, Gram matrices).
pub const IDENTITY_TOL: f64 = 1e-12;

/// Tolerance for orthogonality and row/column-sum constraints.
pub const ORTHO_TOL: f64 = 1e-10;

/// Tolerance on the row-product criterion residual
/// `sum_k a_ik a_jk - delta_ij - (n - 2)`.
pub const ROW_PRODUCT_TOL: f64 = 1e-9;

/// Scale factor for the positive-semidefiniteness test: a Hermitian matrix M
/// is accepted as PSD iff `lambda_min >= -PSD_EPS_SCALE * max(1, ||M||_inf)`.
/// The scale-aware bound avoids false negatives on boundary maps, which are
/// exactly the interesting ones.
pub const PSD_EPS_SCALE: f64 = 1e-9;

/// A point on the simplex violates the positivity inequality when the
/// left-hand side exceeds `1 + VIOLATION_EPS`.
pub const VIOLATION_EPS: f64 = 1e-7;

/// Closed-form criteria are non-strict inequalities; margins above
/// `-CLOSED_BOUNDARY_TOL` certify as positive. Boundary maps (the whole
/// construction class at n = 3) evaluate to margins of a few ulps either
/// side of zero.
pub const CLOSED_BOUNDARY_TOL: f64 = 1e-12;

/// Tolerance on the simplex normalization `sum p_i = 1`.
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;

/// Coefficients in `[-ENTRY_NEG_TOL, 0)` are treated as zero: construction
/// round-off can leave entries a few ulps below zero.
pub const ENTRY_NEG_TOL: f64 = 1e-12;

/// Tolerance on `| |lambda_k| - 1 |` when deciding membership of the phase
/// torus, and on `|lambda_0 - (n-1)|`.
pub const TORUS_MODULUS_TOL: f64 = 1e-9;

/// Maximum imaginary residue allowed when the inverse transform of a
/// conjugate-symmetric spectrum is folded back to real coefficients.
pub const IDFT_IMAG_TOL: f64 = 1e-10;

/// Tolerance for detecting circulant structure in a coefficient matrix.
pub const CIRCULANT_STRUCTURE_TOL: f64 = 1e-12;
