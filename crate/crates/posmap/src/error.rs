use thiserror::Error;

/// Errors produced by map construction, conversion and certification.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dimension must be at least {min}, got {n}")]
    InvalidDimension { n: usize, min: usize },

    #[error("non-finite entry in {context}")]
    NonFinite { context: &'static str },

    #[error("matrix is not orthogonal: max |M M^T - I| = {residual:.3e} exceeds {tol:.1e}")]
    NotOrthogonal { residual: f64, tol: f64 },

    #[error("{axis} {index} sums to {sum:.12} instead of {expected}")]
    SumConstraint {
        axis: &'static str,
        index: usize,
        sum: f64,
        expected: f64,
    },

    #[error("matrix does not satisfy the row-product criterion: max residual {max_residual:.3e}")]
    RowProductCriterion { max_residual: f64 },

    #[error("invalid basis family: {detail}")]
    InvalidBasis { detail: String },

    #[error("invalid frame family: {detail}")]
    InvalidFrame { detail: String },

    #[error("coefficient a[{row}][{col}] = {value:.6} is negative")]
    NegativeCoefficient { row: usize, col: usize, value: f64 },

    #[error("not a probability vector: {detail}")]
    NotSimplex { detail: String },

    #[error("matrix is not circulant")]
    NotCirculant,

    #[error("spectrum is off the torus: |lambda_{index}| = {modulus:.12} (expected {expected})")]
    NotOnTorus {
        index: usize,
        modulus: f64,
        expected: f64,
    },

    #[error("expected {expected} phases for n = {n}, got {actual}")]
    PhaseCount {
        n: usize,
        expected: usize,
        actual: usize,
    },

    #[error("even-dimension sign bit {detail} for n = {n}")]
    EvenSign { n: usize, detail: &'static str },

    #[error("indecomposability test requires a positive triple; ({a}, {b}, {c}) is not positive")]
    NotPositiveTriple { a: f64, b: f64, c: f64 },

    #[error("invalid permutation of {n} columns")]
    InvalidPermutation { n: usize },

    #[error(
        "closed-form and numerical verdicts disagree: closed says {closed} (margin {closed_margin:.3e}), \
         numerical says {numerical} (margin {numerical_margin:.3e})"
    )]
    CriteriaDisagreement {
        closed: &'static str,
        numerical: &'static str,
        closed_margin: f64,
        numerical_margin: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
