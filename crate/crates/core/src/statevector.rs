//! Dense complex state-vector simulator.
//!
//! Qubit 1 is the most significant bit of the basis index, so the "last"
//! qubit (index n) toggles between adjacent basis indices. Gates update
//! amplitudes in place with index-stride iteration; dense matrices exist
//! only on the oracle path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

const NORM_DRIFT_TOL: f64 = 1e-9;
const NORM_REPAIR_LIMIT: f64 = 1e-3;

/// 1-based qubit position; qubit 1 is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitIndex(usize);

impl QubitIndex {
    pub fn new(position: usize) -> Result<Self> {
        if position == 0 {
            return Err(Error::BadIndex {
                index: 0,
                num_qubits: 0,
            });
        }
        Ok(QubitIndex(position))
    }

    pub fn position(self) -> usize {
        self.0
    }

    /// Bit offset from the least significant end of the basis index.
    fn bit_offset(self, num_qubits: usize) -> Result<usize> {
        if self.0 > num_qubits {
            return Err(Error::BadIndex {
                index: self.0,
                num_qubits,
            });
        }
        Ok(num_qubits - self.0)
    }
}

/// Single-qubit gate, unitary within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2x2 {
    entries: [[Complex64; 2]; 2],
}

impl Gate2x2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let g = Gate2x2 { entries };
        if !g.to_matrix().is_unitary(1e-12) {
            return Err(Error::NotUnitary(1e-12));
        }
        Ok(g)
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Gate2x2 {
            entries: [
                [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
            ],
        }
    }

    pub fn x() -> Self {
        Gate2x2 {
            entries: [
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    /// diag(1, e^{i theta}).
    pub fn phase(theta: f64) -> Self {
        Gate2x2 {
            entries: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, theta)],
            ],
        }
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| self.entries[i][j])
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }
}

/// Pure state of `num_qubits` qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// |0...0> on n qubits; n = 0 gives the scalar state (1).
    pub fn zero_state(num_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        QuantumState {
            num_qubits,
            amplitudes,
        }
    }

    /// Builds a state from raw amplitudes, normalizing whenever the norm
    /// drifts from 1 by more than 1e-9. Rejects zero vectors and lengths
    /// that are not powers of two.
    pub fn from_amplitudes(values: Vec<Complex64>) -> Result<Self> {
        Self::build(values, f64::INFINITY)
    }

    /// Like `from_amplitudes` but treats a norm deviation of 1e-3 or more
    /// as a caller bug rather than float drift.
    pub fn from_normalized(values: Vec<Complex64>) -> Result<Self> {
        Self::build(values, NORM_REPAIR_LIMIT)
    }

    fn build(mut values: Vec<Complex64>, repair_limit: f64) -> Result<Self> {
        let len = values.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let norm = values.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-15 {
            return Err(Error::ZeroVector);
        }
        let deviation = (norm - 1.0).abs();
        if deviation >= repair_limit {
            return Err(Error::NormTooFar(deviation));
        }
        if deviation > NORM_DRIFT_TOL {
            for v in &mut values {
                *v /= norm;
            }
        }
        Ok(QuantumState {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes: values,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last_qubit(&self) -> QubitIndex {
        QubitIndex(self.num_qubits.max(1))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Applies a single-qubit gate to the target qubit.
    pub fn apply_gate(&self, gate: &Gate2x2, target: QubitIndex) -> Result<QuantumState> {
        let offset = target.bit_offset(self.num_qubits)?;
        let mask = 1usize << offset;
        let mut amps = self.amplitudes.clone();
        let n = amps.len();
        let mut base = 0;
        while base < n {
            for i in base..base + mask {
                let j = i | mask;
                let a0 = amps[i];
                let a1 = amps[j];
                amps[i] = gate.entry(0, 0) * a0 + gate.entry(0, 1) * a1;
                amps[j] = gate.entry(1, 0) * a0 + gate.entry(1, 1) * a1;
            }
            base += mask << 1;
        }
        Ok(QuantumState {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        })
    }

    /// Applies a 2^t x 2^t unitary block to the ordered target qubits,
    /// restricted to the subspace where every control bit matches the
    /// polarity. The first target qubit is the most significant bit of
    /// the block index.
    pub fn apply_controlled(
        &self,
        block: &CMatrix,
        controls: &[QubitIndex],
        polarity: Polarity,
        targets: &[QubitIndex],
    ) -> Result<QuantumState> {
        let t = targets.len();
        let dim = 1usize << t;
        if block.rows() != dim || block.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: block.rows(),
            });
        }
        let mut ctrl_mask = 0usize;
        for c in controls {
            ctrl_mask |= 1usize << c.bit_offset(self.num_qubits)?;
        }
        let mut target_offsets = Vec::with_capacity(t);
        let mut target_mask = 0usize;
        for q in targets {
            let off = q.bit_offset(self.num_qubits)?;
            if target_mask & (1 << off) != 0 {
                return Err(Error::OverlapError);
            }
            target_mask |= 1 << off;
            target_offsets.push(off);
        }
        if ctrl_mask & target_mask != 0 {
            return Err(Error::OverlapError);
        }
        let required = match polarity {
            Polarity::One => ctrl_mask,
            Polarity::Zero => 0,
        };

        // Scatter a block index onto the target bit positions.
        let spread = |b: usize| -> usize {
            let mut idx = 0usize;
            for (j, off) in target_offsets.iter().enumerate() {
                if (b >> (t - 1 - j)) & 1 == 1 {
                    idx |= 1 << off;
                }
            }
            idx
        };
        let mut amps = self.amplitudes.clone();
        let mut sub = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..amps.len() {
            if i & target_mask != 0 || i & ctrl_mask != required {
                continue;
            }
            for (b, s) in sub.iter_mut().enumerate() {
                *s = amps[i | spread(b)];
            }
            for b in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for (bp, s) in sub.iter().enumerate() {
                    acc += block.get(b, bp) * s;
                }
                amps[i | spread(b)] = acc;
            }
        }
        Ok(QuantumState {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        })
    }

    /// Exchanges the two qubits' bits in every basis index.
    pub fn apply_swap(&self, q_a: QubitIndex, q_b: QubitIndex) -> Result<QuantumState> {
        if q_a == q_b {
            return Err(Error::BadIndex {
                index: q_a.position(),
                num_qubits: self.num_qubits,
            });
        }
        let ma = 1usize << q_a.bit_offset(self.num_qubits)?;
        let mb = 1usize << q_b.bit_offset(self.num_qubits)?;
        let mut amps = self.amplitudes.clone();
        for i in 0..amps.len() {
            if i & ma != 0 && i & mb == 0 {
                amps.swap(i, i ^ ma ^ mb);
            }
        }
        Ok(QuantumState {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        })
    }

    /// Rotates the bit pattern of the first `span` qubits right by one:
    /// |i_1 .. i_s> -> |i_s i_1 .. i_{s-1}>, as s-1 adjacent swaps.
    pub fn qubit_cyclic_right_shift(&self, span: usize) -> Result<QuantumState> {
        if span == 0 || span > self.num_qubits {
            return Err(Error::BadIndex {
                index: span,
                num_qubits: self.num_qubits,
            });
        }
        let mut state = self.clone();
        for q in (1..span).rev() {
            state = state.apply_swap(QubitIndex(q), QubitIndex(q + 1))?;
        }
        Ok(state)
    }

    /// (a_0, ..., a_{N-1}) -> (a_1, ..., a_{N-1}, a_0).
    pub fn amplitude_rotate_left(&self) -> QuantumState {
        let mut amps = self.amplitudes.clone();
        amps.rotate_left(1);
        QuantumState {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        }
    }

    /// Deterministic projective conditioning: returns the renormalized
    /// post-measurement state on the remaining qubits along with the Born
    /// probability of the outcome.
    pub fn condition_on_qubit(
        &self,
        qubit: QubitIndex,
        outcome: u8,
    ) -> Result<(QuantumState, f64)> {
        let offset = qubit.bit_offset(self.num_qubits)?;
        let mask = 1usize << offset;
        let want = if outcome == 0 { 0 } else { mask };
        let mut prob = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i & mask == want {
                prob += a.norm_sqr();
            }
        }
        if prob < 1e-15 {
            return Err(Error::ZeroProbability);
        }
        let scale = prob.sqrt();
        let low_mask = mask - 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amplitudes.len() / 2];
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i & mask == want {
                let reduced = ((i >> (offset + 1)) << offset) | (i & low_mask);
                amps[reduced] = a / scale;
            }
        }
        Ok((
            QuantumState {
                num_qubits: self.num_qubits - 1,
                amplitudes: amps,
            },
            prob,
        ))
    }

    /// Oracle path: full matrix-vector product after a unitarity check.
    pub fn apply_dense_unitary(&self, matrix: &CMatrix) -> Result<QuantumState> {
        if matrix.rows() != self.amplitudes.len() || matrix.cols() != self.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: matrix.rows(),
            });
        }
        if !matrix.is_unitary(1e-10) {
            return Err(Error::NotUnitary(1e-10));
        }
        let amps = matrix.apply(&self.amplitudes)?;
        Ok(QuantumState {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        })
    }

    /// <a|b> = sum conj(a_k) b_k.
    pub fn inner_product(&self, other: &QuantumState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Control polarity: the gate fires when every control bit equals 0 (Zero)
/// or 1 (One).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Zero,
    One,
}
