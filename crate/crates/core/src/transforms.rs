//! Gate-level Hadamard, Fourier, and Haar transforms, their classical
//! oracle matrices, and 2D application through the tensor-product split
//! U = Q^T (x) P with Q = P^T.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::image::ImageMatrix;
use crate::matrix::CMatrix;
use crate::qpie::EncodingRecord;
use crate::statevector::{Gate2x2, Polarity, QubitIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Hadamard,
    Fourier,
    Haar,
}

/// Qubit split for a 2D grid: the first `col_qubits` address the column
/// index, the last `row_qubits` the row index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitSplit {
    pub col_qubits: usize,
    pub row_qubits: usize,
}

impl QubitSplit {
    pub fn for_record(record: &EncodingRecord) -> Result<Self> {
        if !record.rows.is_power_of_two() || !record.cols.is_power_of_two() {
            return Err(Error::SplitMismatch);
        }
        Ok(QubitSplit {
            col_qubits: record.cols.trailing_zeros() as usize,
            row_qubits: record.rows.trailing_zeros() as usize,
        })
    }
}

/// One Hadamard per qubit.
pub fn hadamard_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    for q in 1..=m {
        c.gate(Gate2x2::hadamard(), QubitIndex::new(q).expect("q >= 1"));
    }
    c
}

/// Standard QFT: Hadamards with controlled phase rotations, then qubit
/// reversal swaps so the dense matrix equals the DFT matrix w^{jk}/sqrt(2^m).
pub fn qft_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    for q in 1..=m {
        c.gate(Gate2x2::hadamard(), QubitIndex::new(q).expect("q >= 1"));
        for t in q + 1..=m {
            let angle = 2.0 * std::f64::consts::PI / (1u64 << (t - q + 1)) as f64;
            c.controlled(
                Gate2x2::phase(angle).to_matrix(),
                vec![QubitIndex::new(t).expect("t >= 1")],
                Polarity::One,
                vec![QubitIndex::new(q).expect("q >= 1")],
            );
        }
    }
    for q in 1..=m / 2 {
        c.swap(
            QubitIndex::new(q).expect("q >= 1"),
            QubitIndex::new(m + 1 - q).expect("within range"),
        );
    }
    c
}

/// Recursive Haar matrix: A_M = [A_{M/2} (x) B_X ; I_{M/2} (x) B_Xbar],
/// starting from A_1 = 1.
pub fn haar_matrix(dim: usize) -> Result<CMatrix> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    if dim == 1 {
        return Ok(CMatrix::identity(1));
    }
    let half = haar_matrix(dim / 2)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bx = CMatrix::from_real_rows(&[vec![s, s]]);
    let bxbar = CMatrix::from_real_rows(&[vec![s, -s]]);
    let top = half.kron(&bx);
    let bottom = CMatrix::identity(dim / 2).kron(&bxbar);
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..dim / 2 {
        for j in 0..dim {
            out.set(i, j, top.get(i, j));
            out.set(i + dim / 2, j, bottom.get(i, j));
        }
    }
    Ok(out)
}

fn swap_block() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(1, 2, Complex64::new(1.0, 0.0));
    m.set(2, 1, Complex64::new(1.0, 0.0));
    m.set(3, 3, Complex64::new(1.0, 0.0));
    m
}

/// Recursive Haar circuit: at level k, a zero-controlled Hadamard on the
/// last qubit followed by a zero-controlled cyclic right shift of qubits
/// k+1..m, the shift expanded into adjacent controlled swaps.
pub fn haar_circuit(m: usize) -> Circuit {
    let mut c = Circuit::new(m);
    let last = QubitIndex::new(m.max(1)).expect("m >= 1");
    for k in 0..m {
        let controls: Vec<QubitIndex> = (1..=k)
            .map(|q| QubitIndex::new(q).expect("q >= 1"))
            .collect();
        if controls.is_empty() {
            c.gate(Gate2x2::hadamard(), last);
        } else {
            c.controlled(
                Gate2x2::hadamard().to_matrix(),
                controls.clone(),
                Polarity::Zero,
                vec![last],
            );
        }
        // S_{2^{m-k}} on qubits k+1..m as m-k-1 adjacent swaps
        for q in (k + 1..m).rev() {
            let a = QubitIndex::new(q).expect("q >= 1");
            let b = QubitIndex::new(q + 1).expect("q >= 1");
            if controls.is_empty() {
                c.swap(a, b);
            } else {
                c.controlled(swap_block(), controls.clone(), Polarity::Zero, vec![a, b]);
            }
        }
    }
    c
}

pub fn transform_circuit(kind: TransformKind, m: usize) -> Circuit {
    match kind {
        TransformKind::Hadamard => hadamard_circuit(m),
        TransformKind::Fourier => qft_circuit(m),
        TransformKind::Haar => haar_circuit(m),
    }
}

/// Dense row-transform matrix P for a given side length.
pub fn transform_matrix(kind: TransformKind, dim: usize) -> Result<CMatrix> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    match kind {
        TransformKind::Haar => haar_matrix(dim),
        TransformKind::Fourier => {
            let norm = 1.0 / (dim as f64).sqrt();
            Ok(CMatrix::from_fn(dim, dim, |j, k| {
                let angle = 2.0 * std::f64::consts::PI * (j * k % dim) as f64 / dim as f64;
                Complex64::from_polar(norm, angle)
            }))
        }
        TransformKind::Hadamard => {
            let h = Gate2x2::hadamard().to_matrix();
            let mut out = CMatrix::identity(1);
            let mut d = 1;
            while d < dim {
                out = out.kron(&h);
                d *= 2;
            }
            Ok(out)
        }
    }
}

/// Classical oracle G = P F Q with Q = P^T (no conjugation; for the
/// Fourier kind this matches the usual non-conjugated 2D DFT).
pub fn classical_transform(image: &ImageMatrix, kind: TransformKind) -> Result<CMatrix> {
    let p = transform_matrix(kind, image.rows())?;
    let q = transform_matrix(kind, image.cols())?.transpose();
    let f = CMatrix::from_fn(image.rows(), image.cols(), |i, j| {
        Complex64::new(image.get(i, j), 0.0)
    });
    p.mul(&f)?.mul(&q)
}

/// Applies the 2D transform on the encoded state: the row circuit on the
/// last m qubits and the column circuit on the first l qubits.
pub fn apply_2d(
    record: &EncodingRecord,
    kind: TransformKind,
    split: QubitSplit,
) -> Result<EncodingRecord> {
    let n = record.state.num_qubits();
    if split.col_qubits + split.row_qubits != n
        || record.rows != 1usize << split.row_qubits
        || record.cols != 1usize << split.col_qubits
    {
        return Err(Error::SplitMismatch);
    }
    let mut state = record.state.clone();
    if split.row_qubits > 0 {
        let row_circuit = transform_circuit(kind, split.row_qubits).embed(split.col_qubits, n)?;
        state = row_circuit.apply(&state)?;
    }
    if split.col_qubits > 0 {
        let col_circuit = transform_circuit(kind, split.col_qubits).embed(0, n)?;
        state = col_circuit.apply(&state)?;
    }
    Ok(EncodingRecord {
        state,
        rows: record.rows,
        cols: record.cols,
        scale: record.scale,
        pad_len: record.pad_len,
    })
}

/// Cost of one C^k(U) in elementary gates: single-qubit, two-qubit, and
/// Toffoli-rank gates count as one; higher control ranks decompose into
/// 2k-3 Toffoli-rank gates.
fn controlled_cost(k: usize) -> u64 {
    if k <= 2 {
        1
    } else {
        2 * k as u64 - 3
    }
}

/// Elementary-gate count of haar_circuit(m), with every C^k(S_{2^{m-k}})
/// expanded into 3(m-k-1) C^{k+1}(NOT) gates.
pub fn haar_elementary_gate_count(m: usize) -> u64 {
    let mut total = 0u64;
    for k in 0..m {
        total += controlled_cost(k);
    }
    for k in 0..m.saturating_sub(1) {
        total += 3 * (m - k - 1) as u64 * controlled_cost(k + 1);
    }
    total
}
