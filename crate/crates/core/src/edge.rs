//! Quantum Hadamard edge detection: one Hadamard on the last qubit turns
//! adjacent-pixel pairs into sum/difference pairs; conditioning on outcome
//! 1 keeps the differences.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::image::ImageMatrix;
use crate::qpie::{self, EncodingRecord};
use crate::statevector::{Gate2x2, QuantumState, QubitIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    EvenPairs,
    OddPairs,
    AncillaFull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scan {
    Column,
    Row,
}

/// Raw pairwise differences in pre-conditioning amplitude units: scale
/// 1/sqrt(2) for the pair variants and 1/2 for the ancilla variant.
#[derive(Debug, Clone)]
pub struct BoundaryResult {
    pub differences: Vec<Complex64>,
    pub success_probability: f64,
    pub variant: Variant,
    pub scan: Scan,
}

/// The processing stage of the pair-scan QHED: a single Hadamard on the
/// last qubit.
pub fn processing_circuit(num_qubits: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits);
    c.gate(
        Gate2x2::hadamard(),
        QubitIndex::new(num_qubits.max(1)).expect("n >= 1"),
    );
    c
}

fn condition_differences(state: &QuantumState, scale_back: bool) -> Result<(Vec<Complex64>, f64)> {
    let last = state.last_qubit();
    match state.condition_on_qubit(last, 1) {
        Ok((sub, p)) => {
            let factor = if scale_back { p.sqrt() } else { 1.0 };
            Ok((sub.amplitudes().iter().map(|a| a * factor).collect(), p))
        }
        // no boundary content anywhere: legal, all differences vanish
        Err(Error::ZeroProbability) => Ok((vec![Complex64::new(0.0, 0.0); state.len() / 2], 0.0)),
        Err(e) => Err(e),
    }
}

fn run_pairs(state: &QuantumState, variant: Variant, scan: Scan) -> Result<BoundaryResult> {
    let n = state.num_qubits();
    if n == 0 {
        return Err(Error::BadIndex {
            index: 0,
            num_qubits: 0,
        });
    }
    let input = match variant {
        Variant::OddPairs => state.amplitude_rotate_left(),
        _ => state.clone(),
    };
    let processed = processing_circuit(n).apply(&input)?;
    let (differences, success_probability) = condition_differences(&processed, true)?;
    Ok(BoundaryResult {
        differences,
        success_probability,
        variant,
        scan,
    })
}

/// Appends an ancilla in |+> as the new last qubit, duplicating every
/// amplitude with weight 1/sqrt(2).
pub fn redundant_with_ancilla(state: &QuantumState) -> QuantumState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = Vec::with_capacity(state.len() * 2);
    for a in state.amplitudes() {
        amps.push(a * s);
        amps.push(a * s);
    }
    QuantumState::from_normalized(amps).expect("norm preserved by duplication")
}

fn run_ancilla(state: &QuantumState, scan: Scan) -> Result<BoundaryResult> {
    let n = state.num_qubits();
    if n == 0 {
        return Err(Error::BadIndex {
            index: 0,
            num_qubits: 0,
        });
    }
    let redundant = redundant_with_ancilla(state);
    let permuted = redundant.amplitude_rotate_left();
    let processed = processing_circuit(n + 1).apply(&permuted)?;
    let (differences, success_probability) = condition_differences(&processed, true)?;
    Ok(BoundaryResult {
        differences,
        success_probability,
        variant: Variant::AncillaFull,
        scan,
    })
}

fn run_variant(record: &EncodingRecord, variant: Variant, scan: Scan) -> Result<BoundaryResult> {
    match variant {
        Variant::EvenPairs | Variant::OddPairs => run_pairs(&record.state, variant, scan),
        Variant::AncillaFull => run_ancilla(&record.state, scan),
    }
}

/// Differences (c_{2k} - c_{2k+1})/sqrt(2): boundaries for pixel pairs 0/1,
/// 2/3, ...
pub fn qhed_even(record: &EncodingRecord) -> Result<BoundaryResult> {
    run_variant(record, Variant::EvenPairs, Scan::Column)
}

/// Differences (c_{2k+1} - c_{2k+2})/sqrt(2) for the remaining pairs 1/2,
/// 3/4, ..., with the wrap term c_{N-1} - c_0 at the last slot.
pub fn qhed_odd(record: &EncodingRecord) -> Result<BoundaryResult> {
    run_variant(record, Variant::OddPairs, Scan::Column)
}

/// Ancilla variant: all cyclic differences (c_k - c_{k+1})/2 in one run.
pub fn qhed_ancilla(record: &EncodingRecord) -> Result<BoundaryResult> {
    run_variant(record, Variant::AncillaFull, Scan::Column)
}

/// Full boundary map in pixel-difference units. Differences are rescaled
/// by the encoding scale and the variant factor, reshaped onto the grid,
/// and the cyclic wrap term is masked out. A positive threshold renders a
/// binary map; threshold 0 keeps signed differences.
pub fn edge_map(
    image: &ImageMatrix,
    variant: Variant,
    scan: Scan,
    threshold: f64,
) -> Result<ImageMatrix> {
    let record = match scan {
        Scan::Column => qpie::encode(image)?,
        Scan::Row => qpie::transpose_encode(image)?,
    };
    let result = run_variant(&record, variant, scan)?;
    let total = record.state.amplitudes().len();
    let mut full = vec![0.0; total];
    match variant {
        Variant::EvenPairs => {
            let factor = 2f64.sqrt() * record.scale;
            for (k, d) in result.differences.iter().enumerate() {
                full[2 * k] = d.re * factor;
            }
        }
        Variant::OddPairs => {
            let factor = 2f64.sqrt() * record.scale;
            for (k, d) in result.differences.iter().enumerate() {
                let idx = 2 * k + 1;
                if idx == total - 1 {
                    continue; // wrap pair, not spatial neighbors
                }
                full[idx] = d.re * factor;
            }
        }
        Variant::AncillaFull => {
            let factor = 2.0 * record.scale;
            for (k, d) in result.differences.iter().enumerate() {
                if k == total - 1 {
                    continue; // wrap pair
                }
                full[k] = d.re * factor;
            }
        }
    }
    let grid = qpie::reshape(&full[..record.rows * record.cols], record.rows, record.cols)?;
    let map = match scan {
        Scan::Column => grid,
        Scan::Row => grid.transpose(),
    };
    if threshold > 0.0 {
        Ok(ImageMatrix::from_fn(map.rows(), map.cols(), |i, j| {
            if map.get(i, j).abs() > threshold {
                1.0
            } else {
                0.0
            }
        }))
    } else {
        Ok(map)
    }
}
