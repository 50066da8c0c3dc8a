//! Quantum probability image encoding: pixel values in amplitudes, pixel
//! positions in computational basis indices. Column-major flattening, zero
//! padding up to the next power of two.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::image::ImageMatrix;
use crate::statevector::QuantumState;

/// An encoded image together with everything needed to decode it again:
/// the original grid shape, the normalization scale, and the zero tail.
#[derive(Debug, Clone)]
pub struct EncodingRecord {
    pub state: QuantumState,
    pub rows: usize,
    pub cols: usize,
    pub scale: f64,
    pub pad_len: usize,
}

/// Column-major flattening: index k = (i-1) + M*(j-1), zero-based.
pub fn vectorize(image: &ImageMatrix) -> Vec<f64> {
    let mut out = Vec::with_capacity(image.rows() * image.cols());
    for j in 0..image.cols() {
        for i in 0..image.rows() {
            out.push(image.get(i, j));
        }
    }
    out
}

/// Inverse of `vectorize` for a known shape.
pub fn reshape(values: &[f64], rows: usize, cols: usize) -> Result<ImageMatrix> {
    if values.len() != rows * cols {
        return Err(Error::InconsistentShape);
    }
    Ok(ImageMatrix::from_fn(rows, cols, |i, j| values[j * rows + i]))
}

/// Encodes the image as c_k = F_{i,j} / (sum F^2)^{1/2} for k < ML, zero
/// for the padded tail.
pub fn encode(image: &ImageMatrix) -> Result<EncodingRecord> {
    let flat = vectorize(image);
    if flat.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = flat.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale < 1e-300 {
        return Err(Error::ZeroImage);
    }
    let padded = flat.len().next_power_of_two();
    let pad_len = padded - flat.len();
    let mut amplitudes = Vec::with_capacity(padded);
    for v in &flat {
        amplitudes.push(Complex64::new(v / scale, 0.0));
    }
    amplitudes.resize(padded, Complex64::new(0.0, 0.0));
    Ok(EncodingRecord {
        state: QuantumState::from_amplitudes(amplitudes)?,
        rows: image.rows(),
        cols: image.cols(),
        scale,
        pad_len,
    })
}

/// Encodes the transposed matrix: a row-major scan of the original image,
/// used for vertical-boundary (row) scanning.
pub fn transpose_encode(image: &ImageMatrix) -> Result<EncodingRecord> {
    encode(&image.transpose())
}

/// Decoded pixels plus the imaginary parts, which are only reported when
/// some amplitude has |Im| > 1e-9.
#[derive(Debug, Clone)]
pub struct DecodedImage {
    pub real: ImageMatrix,
    pub imag: Option<ImageMatrix>,
}

/// Truncates the padded tail and reshapes amplitudes back to the grid.
/// With `rescale`, pixel values are multiplied by the stored scale so the
/// encode/decode roundtrip returns absolute intensities.
pub fn decode_parts(record: &EncodingRecord, rescale: bool) -> Result<DecodedImage> {
    let count = record.rows * record.cols;
    let amps = record.state.amplitudes();
    if count + record.pad_len != amps.len() {
        return Err(Error::InconsistentShape);
    }
    let factor = if rescale { record.scale } else { 1.0 };
    let re: Vec<f64> = amps[..count].iter().map(|c| c.re * factor).collect();
    let real = reshape(&re, record.rows, record.cols)?;
    let has_imag = amps.iter().any(|c| c.im.abs() > 1e-9);
    let imag = if has_imag {
        let im: Vec<f64> = amps[..count].iter().map(|c| c.im * factor).collect();
        Some(reshape(&im, record.rows, record.cols)?)
    } else {
        None
    };
    Ok(DecodedImage { real, imag })
}

/// Real-part decode; see `decode_parts` for the imaginary channel.
pub fn decode(record: &EncodingRecord, rescale: bool) -> Result<ImageMatrix> {
    Ok(decode_parts(record, rescale)?.real)
}

/// Complex-valued decode onto the grid, for transforms with complex output.
pub fn decode_complex(record: &EncodingRecord, rescale: bool) -> Result<crate::matrix::CMatrix> {
    let count = record.rows * record.cols;
    let amps = record.state.amplitudes();
    if count + record.pad_len != amps.len() {
        return Err(Error::InconsistentShape);
    }
    let factor = if rescale { record.scale } else { 1.0 };
    Ok(crate::matrix::CMatrix::from_fn(record.rows, record.cols, |i, j| {
        amps[j * record.rows + i] * factor
    }))
}

/// The 4x4 chessboard test pattern, with unit amplitude per lit pixel.
pub fn chessboard_4x4() -> ImageMatrix {
    ImageMatrix::from_fn(4, 4, |i, j| if (i + j) % 2 == 0 { 1.0 } else { 0.0 })
}

/// The 4x4 two-region pattern used for the edge-detection demos.
pub fn edge_demo_4x4() -> ImageMatrix {
    ImageMatrix::from_rows(vec![
        vec![0.0, 1.0, 0.0, 0.0],
        vec![1.0, 1.0, 1.0, 0.0],
        vec![1.0, 1.0, 1.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
    .expect("rectangular")
}
