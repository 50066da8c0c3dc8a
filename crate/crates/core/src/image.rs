//! Real pixel grids. Values may be negative after processing; ingest
//! clamping happens at the file layer, not here.

use crate::error::{Error, Result};

/// M x L grid of real pixel values, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageMatrix {
    rows: usize,
    cols: usize,
    pixels: Vec<f64>,
}

impl ImageMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ImageMatrix {
            rows,
            cols,
            pixels: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InconsistentShape);
        }
        let pixels: Vec<f64> = rows.into_iter().flatten().collect();
        if pixels.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ImageMatrix { rows: r, cols: c, pixels })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut img = ImageMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                img.set(i, j, f(i, j));
            }
        }
        img
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pixels[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.pixels[i * self.cols + j] = v;
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn transpose(&self) -> ImageMatrix {
        ImageMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.pixels.iter().map(|p| p * p).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.pixels.iter().fold(0.0, |m, p| m.max(p.abs()))
    }

    pub fn max_abs_diff(&self, other: &ImageMatrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                a_rows: self.rows,
                a_cols: self.cols,
                b_rows: other.rows,
                b_cols: other.cols,
            });
        }
        Ok(self
            .pixels
            .iter()
            .zip(other.pixels.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}
