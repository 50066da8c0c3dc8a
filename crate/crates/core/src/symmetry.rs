//! Inversion-symmetry detection: NOT on every qubit rotates the image by
//! 180 degrees, and a SWAP test estimates the overlap with the original.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::statevector::{Gate2x2, Polarity, QuantumState, QubitIndex};

/// Largest joint register (2n+1 qubits) simulated at the circuit level;
/// bigger inputs use the analytic Born probability directly.
const CIRCUIT_PATH_MAX_QUBITS: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEstimate {
    /// Signed analytic overlap <a|b>.
    pub analytic: Complex64,
    /// Sampled estimate of |<a|b>|^2, clamped to [0, 1].
    pub sampled: f64,
    pub shots: u64,
    pub seed: u64,
}

/// X on every qubit: amplitude k moves to 2^n - 1 - k, a point reflection
/// of the image around its center.
pub fn rotate_180(state: &QuantumState) -> QuantumState {
    let mut amps = state.amplitudes().to_vec();
    amps.reverse();
    QuantumState::from_normalized(amps).expect("reversal preserves the norm")
}

/// Same rotation through the gate path, for circuit/permutation agreement
/// checks.
pub fn rotate_180_circuit(num_qubits: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits);
    for q in 1..=num_qubits {
        c.gate(Gate2x2::x(), QubitIndex::new(q).expect("q >= 1"));
    }
    c
}

/// <f|U_NOT|f>; equals 1 for a perfectly inversion-symmetric image.
pub fn inversion_overlap(state: &QuantumState) -> Complex64 {
    state
        .inner_product(&rotate_180(state))
        .expect("same register")
}

fn swap_test_zero_probability(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    let n = a.num_qubits();
    if n != b.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let total = 2 * n + 1;
    if total > CIRCUIT_PATH_MAX_QUBITS {
        let overlap = a.inner_product(b)?;
        return Ok((1.0 + overlap.norm_sqr()) / 2.0);
    }
    // ancilla is qubit 1, register a on qubits 2..=n+1, register b after it
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << total];
    for (ia, va) in a.amplitudes().iter().enumerate() {
        for (ib, vb) in b.amplitudes().iter().enumerate() {
            amps[(ia << n) | ib] = va * vb;
        }
    }
    let joint = QuantumState::from_normalized(amps)?;
    let ancilla = QubitIndex::new(1)?;
    let mut circuit = Circuit::new(total);
    circuit.gate(Gate2x2::hadamard(), ancilla);
    for j in 1..=n {
        circuit.controlled(
            swap_block(),
            vec![ancilla],
            Polarity::One,
            vec![QubitIndex::new(1 + j)?, QubitIndex::new(1 + n + j)?],
        );
    }
    circuit.gate(Gate2x2::hadamard(), ancilla);
    let out = circuit.apply(&joint)?;
    let (_, p_zero) = out.condition_on_qubit(ancilla, 0)?;
    Ok(p_zero)
}

fn swap_block() -> crate::matrix::CMatrix {
    let mut m = crate::matrix::CMatrix::zeros(4, 4);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(1, 2, Complex64::new(1.0, 0.0));
    m.set(2, 1, Complex64::new(1.0, 0.0));
    m.set(3, 3, Complex64::new(1.0, 0.0));
    m
}

/// Circuit-level SWAP test with seeded Bernoulli sampling of the ancilla:
/// P(ancilla = 0) = (1 + |<a|b>|^2)/2, estimate = 2 freq(0) - 1.
pub fn swap_test(a: &QuantumState, b: &QuantumState, shots: u64, seed: u64) -> Result<OverlapEstimate> {
    if shots == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let p_zero = swap_test_zero_probability(a, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = 0u64;
    for _ in 0..shots {
        if rng.gen::<f64>() < p_zero {
            zeros += 1;
        }
    }
    let freq = zeros as f64 / shots as f64;
    let sampled = (2.0 * freq - 1.0).clamp(0.0, 1.0);
    Ok(OverlapEstimate {
        analytic: a.inner_product(b)?,
        sampled,
        shots,
        seed,
    })
}
