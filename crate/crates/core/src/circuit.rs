//! Circuits as ordered gate application lists, plus a dense-matrix view
//! for oracle comparisons.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::statevector::{Gate2x2, Polarity, QuantumState, QubitIndex};

#[derive(Debug, Clone)]
pub enum Step {
    Gate {
        gate: Gate2x2,
        target: QubitIndex,
    },
    Controlled {
        block: CMatrix,
        controls: Vec<QubitIndex>,
        polarity: Polarity,
        targets: Vec<QubitIndex>,
    },
    Swap {
        a: QubitIndex,
        b: QubitIndex,
    },
    CyclicRightShift {
        span: usize,
    },
    RotateLeft,
}

#[derive(Debug, Clone)]
pub struct Circuit {
    num_qubits: usize,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            steps: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn gate(&mut self, gate: Gate2x2, target: QubitIndex) -> &mut Self {
        self.steps.push(Step::Gate { gate, target });
        self
    }

    pub fn controlled(
        &mut self,
        block: CMatrix,
        controls: Vec<QubitIndex>,
        polarity: Polarity,
        targets: Vec<QubitIndex>,
    ) -> &mut Self {
        self.steps.push(Step::Controlled {
            block,
            controls,
            polarity,
            targets,
        });
        self
    }

    pub fn swap(&mut self, a: QubitIndex, b: QubitIndex) -> &mut Self {
        self.steps.push(Step::Swap { a, b });
        self
    }

    pub fn cyclic_right_shift(&mut self, span: usize) -> &mut Self {
        self.steps.push(Step::CyclicRightShift { span });
        self
    }

    pub fn rotate_left(&mut self) -> &mut Self {
        self.steps.push(Step::RotateLeft);
        self
    }

    /// Runs every step in order on a copy of the input state.
    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.num_qubits,
                got: state.len(),
            });
        }
        let mut current = state.clone();
        for step in &self.steps {
            current = match step {
                Step::Gate { gate, target } => current.apply_gate(gate, *target)?,
                Step::Controlled {
                    block,
                    controls,
                    polarity,
                    targets,
                } => current.apply_controlled(block, controls, *polarity, targets)?,
                Step::Swap { a, b } => current.apply_swap(*a, *b)?,
                Step::CyclicRightShift { span } => current.qubit_cyclic_right_shift(*span)?,
                Step::RotateLeft => current.amplitude_rotate_left(),
            };
        }
        Ok(current)
    }

    /// Dense matrix of the whole circuit, column by column. Oracle path
    /// only; exponential in the qubit count.
    pub fn dense_matrix(&self) -> Result<CMatrix> {
        let dim = 1usize << self.num_qubits;
        let mut out = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[col] = Complex64::new(1.0, 0.0);
            let basis = QuantumState::from_amplitudes(amps)?;
            let image = self.apply(&basis)?;
            for (row, v) in image.amplitudes().iter().enumerate() {
                out.set(row, col, *v);
            }
        }
        Ok(out)
    }

    /// Re-targets the circuit onto qubits offset+1 ..= offset+num_qubits of
    /// a larger register. Whole-register permutation steps are remapped to
    /// the shifted span.
    pub fn embed(&self, offset: usize, total_qubits: usize) -> Result<Circuit> {
        if offset + self.num_qubits > total_qubits {
            return Err(Error::BadIndex {
                index: offset + self.num_qubits,
                num_qubits: total_qubits,
            });
        }
        let shift = |q: QubitIndex| QubitIndex::new(q.position() + offset).expect("positive");
        let mut out = Circuit::new(total_qubits);
        for step in &self.steps {
            let mapped = match step {
                Step::Gate { gate, target } => Step::Gate {
                    gate: *gate,
                    target: shift(*target),
                },
                Step::Controlled {
                    block,
                    controls,
                    polarity,
                    targets,
                } => Step::Controlled {
                    block: block.clone(),
                    controls: controls.iter().map(|q| shift(*q)).collect(),
                    polarity: *polarity,
                    targets: targets.iter().map(|q| shift(*q)).collect(),
                },
                Step::Swap { a, b } => Step::Swap {
                    a: shift(*a),
                    b: shift(*b),
                },
                Step::CyclicRightShift { span } => {
                    // expand to explicit swaps on the shifted qubits
                    let mut swaps = Vec::new();
                    for q in (1..*span).rev() {
                        swaps.push((q + offset, q + 1 + offset));
                    }
                    for (a, b) in swaps {
                        out.swap(QubitIndex::new(a)?, QubitIndex::new(b)?);
                    }
                    continue;
                }
                Step::RotateLeft => {
                    return Err(Error::BadIndex {
                        index: 0,
                        num_qubits: total_qubits,
                    })
                }
            };
            out.steps.push(mapped);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circuit_apply_matches_dense_matrix() {
        let q1 = QubitIndex::new(1).unwrap();
        let q2 = QubitIndex::new(2).unwrap();
        let q3 = QubitIndex::new(3).unwrap();
        let mut c = Circuit::new(3);
        c.gate(Gate2x2::hadamard(), q3)
            .swap(q1, q2)
            .controlled(
                Gate2x2::phase(std::f64::consts::FRAC_PI_2).to_matrix(),
                vec![q1],
                Polarity::One,
                vec![q3],
            )
            .cyclic_right_shift(3)
            .rotate_left();

        let m = c.dense_matrix().unwrap();
        assert!(m.is_unitary(1e-12));

        let mut amps = Vec::new();
        for k in 0..8 {
            amps.push(Complex64::new(0.3 - 0.05 * k as f64, 0.1 * k as f64));
        }
        let state = QuantumState::from_amplitudes(amps.clone()).unwrap();
        let via_circuit = c.apply(&state).unwrap();
        let via_matrix = m.apply(state.amplitudes()).unwrap();
        for (a, b) in via_circuit.amplitudes().iter().zip(via_matrix.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn embed_offsets_targets() {
        let mut c = Circuit::new(1);
        c.gate(Gate2x2::x(), QubitIndex::new(1).unwrap());
        let e = c.embed(1, 2).unwrap();
        let out = e.apply(&QuantumState::zero_state(2)).unwrap();
        // X on qubit 2 of |00> gives |01>
        assert!((out.amplitudes()[1].re - 1.0).abs() < 1e-15);
    }
}
