//! Error types shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("amplitude vector is identically zero")]
    ZeroVector,
    #[error("norm deviates from 1 by {0:.3e}, beyond the 1e-3 repair limit")]
    NormTooFar(f64),
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    BadIndex { index: usize, num_qubits: usize },
    #[error("control and target qubits overlap")]
    OverlapError,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not unitary within {0:.1e}")]
    NotUnitary(f64),
    #[error("measurement outcome has probability below 1e-15")]
    ZeroProbability,
    #[error("image has no nonzero pixel")]
    ZeroImage,
    #[error("pixel values must be finite")]
    NonFinite,
    #[error("encoding record shape is inconsistent with its state")]
    InconsistentShape,
    #[error("qubit split does not match the encoded grid")]
    SplitMismatch,
    #[error("filter operator needs M >= 4, got {0}")]
    TooSmall(usize),
    #[error("shape mismatch: {a_rows}x{a_cols} vs {b_rows}x{b_cols}")]
    ShapeMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
    #[error("reference image has zero norm")]
    ZeroReference,
}
