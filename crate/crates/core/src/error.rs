use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("octonion has zero norm and no inverse")]
    ZeroDivisor,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("anti-symmetry violated at (i={i}, j={j}, k={k}): c[i][j][k]={forward}, c[j][i][k]={backward}")]
    AntisymmetryViolation { i: usize, j: usize, k: usize, forward: f64, backward: f64 },
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("operation requires the octonion builtin, got `{0}`")]
    UnsupportedAlgebra(String),
    #[error("generator must be nonzero")]
    ZeroElement,
    #[error("spectrum is not purely imaginary (max |Re| = {max_real:e})")]
    NonImaginarySpectrum { max_real: f64 },
    #[error("function is not conjugate-symmetric on the spectrum (defect {defect:e})")]
    NonConjugateSymmetricF { defect: f64 },
    #[error("operator is not diagonalizable (minimal polynomial residual {residual:e})")]
    NotDiagonalizable { residual: f64 },
    #[error("resolvent parameter lies on the spectrum (distance {distance:e})")]
    SpectrumHit { distance: f64 },
    #[error("octonion is not imaginary (real part {real:e})")]
    NotImaginary { real: f64 },
    #[error("octonion is not a unit (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("logarithm branch point: point is within tolerance of -1")]
    BranchPoint,
    #[error("unsupported BCH order {0} (supported: 1..=6)")]
    UnsupportedOrder(usize),
    #[error("unknown convention `{0}`")]
    UnknownConvention(String),
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
