//! Quantum image processing on a classical state-vector simulator.
//!
//! Grayscale images are amplitude-encoded into pure states (pixel values
//! in the amplitudes, positions in the computational basis), processed by
//! gate-level circuits, and decoded back to pixel grids. Every quantum
//! path has a classical oracle counterpart used by the test suites.

pub mod circuit;
pub mod edge;
pub mod error;
pub mod filtering;
pub mod image;
pub mod matrix;
pub mod metrics;
pub mod qpie;
pub mod statevector;
pub mod symmetry;
pub mod transforms;

pub use circuit::{Circuit, Step};
pub use error::{Error, Result};
pub use image::ImageMatrix;
pub use matrix::CMatrix;
pub use statevector::{Gate2x2, Polarity, QuantumState, QubitIndex};
