use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("matrix is not Hermitian: |a[{row},{col}] - conj(a[{col},{row}])| = {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("zero vector at index {index} (norm {norm:e})")]
    ZeroVector { index: usize, norm: f64 },

    #[error("operator is numerically singular (sigma_min = {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("point ({re}, {im}) lies outside the admissible disc |z| < {radius}")]
    OutsideDisc { re: f64, im: f64, radius: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Gram matrix is ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("kernel vanishes at sampled pair ({i}, {j})")]
    KernelVanishes { i: usize, j: usize },

    #[error("non-positive kernel diagonal {value:e} at point {index}")]
    NonPositiveDiagonal { index: usize, value: f64 },

    #[error("section has zero norm")]
    DegenerateSection,

    #[error("provider is not normalized")]
    NotNormalized,

    #[error("section size {requested} exceeds sequence length {len}")]
    SectionTooLarge { requested: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
