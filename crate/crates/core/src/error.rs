use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index ({h}, {j}) out of range for n = {n}")]
    IndexOutOfRange { h: usize, j: usize, n: usize },
    #[error("dimension {n} too small, need at least {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("determinant differs from 1 by {0:e}")]
    NotUnimodular(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed decomposition tree: {0}")]
    MalformedTree(String),
    #[error("invalid angle coordinates: {0}")]
    InvalidAngles(String),
    #[error("polar angle xi_{index} sits on the pole pi/2; stereographic coordinate diverges")]
    StereographicPole { index: usize },
    #[error("Gauss decomposition undefined at theta = pi/2")]
    GaussPole,
    #[error("expansion index {j} out of range 0..={max}")]
    ExpansionIndex { j: usize, max: usize },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
