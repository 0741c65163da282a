use thiserror::Error;

/// Errors produced by context construction and the range/spectra engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {value:.6e} is significantly negative")]
    NegativeEigenvalue { value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator moves the null space of A: residual {residual:.3e} exceeds {tol:.3e}")]
    NotABounded { residual: f64, tol: f64 },

    #[error("rank of A is {rank} but the operation needs at least {required}")]
    RankTooSmall { rank: usize, required: usize },

    #[error("vector is not of unit A-seminorm: |x|_A = {norm:.6e}")]
    NotUnitANorm { norm: f64 },

    #[error("|q| = {modulus:.6e} exceeds 1")]
    QOutOfDisk { modulus: f64 },

    #[error("the A-q-numerical range is empty: rank(A) = 1 and |q| < 1")]
    EmptyRange,

    #[error("operator is not A-self-adjoint: residual {residual:.3e}")]
    NotASelfAdjoint { residual: f64 },

    #[error("operator is not A-nilpotent of index 2")]
    NotANilpotent2,

    #[error("q = 0 is excluded here")]
    QZero,
}
