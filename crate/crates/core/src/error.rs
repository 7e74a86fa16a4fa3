use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matrix is not Hermitian: ||H - H^dag||_F = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: ||U U^dag - I||_F = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("unsupported qubit count {n} (supported {min}..={max})")]
    UnsupportedQubits { n: usize, min: usize, max: usize },

    #[error("blade {indices:?} is not Hermitian under the omega rule")]
    NonHermitianBlade { indices: Vec<usize> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate output: activation annihilates reference component {index}")]
    DegenerateOutput { index: usize },

    #[error("non-finite gradient component {index}")]
    NonFiniteGradient { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
