//! Comparison metrics: relative image Euclidean distance and pure-state
//! fidelity.

use crate::error::{Error, Result};
use crate::image::ImageMatrix;
use crate::statevector::QuantumState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub relative_euclidean: f64,
    pub state_fidelity: f64,
    pub max_abs_error: f64,
}

/// ||a - b||_F / ||b||_F.
pub fn relative_distance(a: &ImageMatrix, b: &ImageMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch {
            a_rows: a.rows(),
            a_cols: a.cols(),
            b_rows: b.rows(),
            b_cols: b.cols(),
        });
    }
    let ref_norm = b.frobenius_norm();
    if ref_norm < 1e-300 {
        return Err(Error::ZeroReference);
    }
    let diff: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(diff.sqrt() / ref_norm)
}

/// |<a|b>| for pure states.
pub fn state_fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.inner_product(b)?.norm())
}

pub fn compare_images(a: &ImageMatrix, b: &ImageMatrix) -> Result<(f64, f64)> {
    Ok((relative_distance(a, b)?, a.max_abs_diff(b)?))
}
