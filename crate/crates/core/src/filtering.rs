//! Spatial filtering as an M^2 x M^2 banded linear operator built from a
//! 3x3 mask. Boundary pixels pass through via identity rows; the operator
//! is unitary only for the trivial mask |w_22| = 1.

use crate::error::{Error, Result};
use crate::image::ImageMatrix;
use crate::qpie::{reshape, vectorize};

/// 3x3 filter weights w_{uv}, u = mask row, v = mask column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterMask {
    w: [[f64; 3]; 3],
}

impl FilterMask {
    pub fn new(w: [[f64; 3]; 3]) -> Result<Self> {
        if w.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(FilterMask { w })
    }

    pub fn identity() -> Self {
        let mut w = [[0.0; 3]; 3];
        w[1][1] = 1.0;
        FilterMask { w }
    }

    pub fn averaging() -> Self {
        FilterMask {
            w: [[1.0 / 9.0; 3]; 3],
        }
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.w[u][v]
    }
}

/// Sparse row storage of the block-tridiagonal filter operator: at most 9
/// nonzeros per row, identity rows for every boundary pixel.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, k: usize) -> &[(usize, f64)] {
        &self.rows[k]
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, w)| w * v[j]).sum())
            .collect())
    }

    /// Dense copy; test/debug helper for small M only.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.dim]; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                out[i][j] = w;
            }
        }
        out
    }
}

/// Builds the filter operator: first and last block rows are identity
/// blocks; interior block row s carries (V_1, V_2, V_3) at block columns
/// (s-1, s, s+1), where V_v holds mask column v on its interior rows and
/// V_2 alone keeps unit first/last rows.
pub fn build_filter_operator(mask: &FilterMask, m: usize) -> Result<SparseOperator> {
    if m < 4 {
        return Err(Error::TooSmall(m));
    }
    if !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    let dim = m * m;
    let mut rows = Vec::with_capacity(dim);
    for k in 0..dim {
        let s = k / m; // block row = column index of the pixel
        let t = k % m; // row index of the pixel
        if s == 0 || s == m - 1 || t == 0 || t == m - 1 {
            rows.push(vec![(k, 1.0)]);
            continue;
        }
        let mut row = Vec::with_capacity(9);
        for v in 0..3 {
            for u in 0..3 {
                let w = mask.weight(u, v);
                if w != 0.0 {
                    let col = (s + v - 1) * m + (t + u - 1);
                    row.push((col, w));
                }
            }
        }
        rows.push(row);
    }
    Ok(SparseOperator { dim, rows })
}

/// reshape(U vec(F)): interior pixels are the 3x3 weighted sums, boundary
/// pixels pass through unchanged.
pub fn apply_filter(image: &ImageMatrix, mask: &FilterMask) -> Result<ImageMatrix> {
    if image.rows() != image.cols() {
        return Err(Error::ShapeMismatch {
            a_rows: image.rows(),
            a_cols: image.cols(),
            b_rows: image.cols(),
            b_cols: image.cols(),
        });
    }
    let op = build_filter_operator(mask, image.rows())?;
    let filtered = op.apply(&vectorize(image))?;
    reshape(&filtered, image.rows(), image.cols())
}

/// Checks U^T U = I within `tol` using sparse row products.
pub fn is_unitary(op: &SparseOperator, tol: f64) -> bool {
    // Gram = sum over rows of the outer product row^T row; U^T U = Gram.
    let mut gram: std::collections::HashMap<(usize, usize), f64> = std::collections::HashMap::new();
    for row in &op.rows {
        for &(c1, v1) in row {
            for &(c2, v2) in row {
                *gram.entry((c1, c2)).or_insert(0.0) += v1 * v2;
            }
        }
    }
    for ((c1, c2), v) in &gram {
        let want = if c1 == c2 { 1.0 } else { 0.0 };
        if (v - want).abs() > tol {
            return false;
        }
    }
    // diagonal entries missing from the map are zero columns
    for d in 0..op.dim {
        if !gram.contains_key(&(d, d)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct double-loop convolution on interior pixels, boundary kept.
    fn convolution_oracle(image: &ImageMatrix, mask: &FilterMask) -> ImageMatrix {
        let m = image.rows();
        ImageMatrix::from_fn(m, m, |i, j| {
            if i == 0 || j == 0 || i == m - 1 || j == m - 1 {
                image.get(i, j)
            } else {
                let mut acc = 0.0;
                for u in 0..3 {
                    for v in 0..3 {
                        acc += mask.weight(u, v) * image.get(i + u - 1, j + v - 1);
                    }
                }
                acc
            }
        })
    }

    fn pseudo_random(seed: &mut u64) -> f64 {
        // xorshift64*, mapped to [0, 1)
        *seed ^= *seed << 13;
        *seed ^= *seed >> 7;
        *seed ^= *seed << 17;
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn identity_mask_builds_identity_operator() {
        let op = build_filter_operator(&FilterMask::identity(), 4).unwrap();
        for (i, row) in op.to_dense().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
        assert!(is_unitary(&op, 1e-12));
    }

    #[test]
    fn negated_center_mask_is_unitary_averaging_is_not() {
        let mut w = [[0.0; 3]; 3];
        w[1][1] = -1.0;
        let op = build_filter_operator(&FilterMask::new(w).unwrap(), 8).unwrap();
        assert!(is_unitary(&op, 1e-12));
        let avg = build_filter_operator(&FilterMask::averaging(), 8).unwrap();
        assert!(!is_unitary(&avg, 1e-12));
    }

    #[test]
    fn averaging_mask_interior_rows_sum_to_one() {
        let op = build_filter_operator(&FilterMask::averaging(), 4).unwrap();
        let m = 4;
        for k in 0..16 {
            let (s, t) = (k / m, k % m);
            let sum: f64 = op.row(k).iter().map(|&(_, w)| w).sum();
            if s > 0 && s < m - 1 && t > 0 && t < m - 1 {
                assert!((sum - 1.0).abs() < 1e-12);
                assert_eq!(op.row(k).len(), 9);
            } else {
                assert_eq!(op.row(k), &[(k, 1.0)]);
            }
        }
    }

    #[test]
    fn operator_matches_convolution_oracle() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        for m in [8usize, 16] {
            let img = ImageMatrix::from_fn(m, m, |_, _| pseudo_random(&mut seed));
            let mut w = [[0.0; 3]; 3];
            for row in &mut w {
                for v in row {
                    *v = pseudo_random(&mut seed) - 0.5;
                }
            }
            let mask = FilterMask::new(w).unwrap();
            let got = apply_filter(&img, &mask).unwrap();
            let want = convolution_oracle(&img, &mask);
            assert!(got.max_abs_diff(&want).unwrap() < 1e-12);
        }
    }

    #[test]
    fn smoothing_chessboard_balances_interior() {
        let img = crate::qpie::chessboard_4x4();
        let got = apply_filter(&img, &FilterMask::averaging()).unwrap();
        for i in 1..3 {
            for j in 1..3 {
                // 3x3 window over the chessboard holds 4 or 5 lit pixels
                let lit = if (i + j) % 2 == 0 { 5.0 } else { 4.0 };
                assert!((got.get(i, j) - lit / 9.0).abs() < 1e-12);
            }
        }
        for j in 0..4 {
            assert_eq!(got.get(0, j), img.get(0, j));
            assert_eq!(got.get(3, j), img.get(3, j));
        }
    }

    #[test]
    fn sparsity_bound_holds() {
        let op = build_filter_operator(&FilterMask::averaging(), 16).unwrap();
        assert!(op.nonzeros() <= 9 * 16 * 16);
    }

    #[test]
    fn small_or_odd_sizes_rejected() {
        assert_eq!(build_filter_operator(&FilterMask::identity(), 2).unwrap_err(), Error::TooSmall(2));
        assert_eq!(
            build_filter_operator(&FilterMask::identity(), 6).unwrap_err(),
            Error::NotPowerOfTwo(6)
        );
    }
}
