//! Diagonal-type positive maps on matrix algebras.
//!
//! A diagonal-type map on `M_n(C)` sends each diagonal matrix unit `E_ii`
//! to `sum_j a_ij E_jj` and negates the off-diagonal units. This crate
//! builds such maps from orthogonal matrices (the Kossakowski construction),
//! from orthonormal bases tilted against the diagonal direction, and from
//! equiangular frames; parametrizes the circulant subclass by phases on a
//! torus through the discrete Fourier transform; and certifies positivity,
//! complete positivity, and (for n = 3 circulant maps) indecomposability,
//! combining exact closed-form criteria with a multistart simplex optimizer
//! and an independent sampling oracle.
//!
//! Entry points:
//! - [`map`]: the map type, its action, and the derived Choi and
//!   complete-positivity matrices;
//! - [`construction`]: orthogonal/basis/frame constructions and the
//!   conversions between the coefficient and orthogonal pictures;
//! - [`positivity`]: verdicts, the inequality engines, and the oracle;
//! - [`spectrum`]: circulant eigenvalues, phase coordinates, torus sampling.
//!
//! All types are immutable after construction and every operation is a pure
//! function, deterministic per seed, so values can be shared across threads
//! and scans over independent maps parallelize freely.

pub mod construction;
pub mod error;
pub mod map;
pub mod matrix;
pub mod positivity;
pub mod spectrum;
pub mod tol;

pub use num_complex::Complex64;

pub use construction::{
    a_from_b, b_from_a, basis_from_frame, equiangular_frame, f_basis, f_vectors, haar_orthogonal,
    kossakowski_from_orthogonal, map_from_basis, permute_columns, rotation_embedding,
    verify_row_products, BasisFamily, FrameFamily, OrthogonalMatrix, RowProductCheck,
};
pub use error::{Error, Result};
pub use map::{DMatrix, DiagonalTypeMap};
pub use matrix::ComplexMatrix;
pub use positivity::{
    certify, check_circulant_inequality, check_cp, check_indecomposable_n3, check_positive_closed,
    check_positive_numerical, in_lhs, oracle_positivity, OptimizerConfig, OracleReport,
    PositivityStatus, PositivityVerdict, SimplexPoint,
};
pub use spectrum::{
    alphas_from_phases, determinant_modulus, dft_eigenvalues, phases_from_alphas,
    sample_phase_points, torus_sample, CirculantParams, PhasePoint,
};
