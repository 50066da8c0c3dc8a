//! Acceptance suite: exact-oracle regression checks for every pipeline,
//! one criterion per test, each printing a pass line with its runtime.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qimp_core::circuit::Circuit;
use qimp_core::edge::{self, Scan, Variant};
use qimp_core::filtering::{self, FilterMask};
use qimp_core::image::ImageMatrix;
use qimp_core::qpie;
use qimp_core::statevector::{Gate2x2, Polarity, QuantumState, QubitIndex};
use qimp_core::symmetry;
use qimp_core::transforms::{self, QubitSplit, TransformKind};

fn pass(criterion: &str, started: Instant, budget_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "{criterion}: runtime {elapsed:.2}s exceeds {budget_secs}s"
    );
    println!("[acceptance] {criterion}: PASS ({elapsed:.3}s)");
}

fn random_state(rng: &mut ChaCha8Rng, num_qubits: usize) -> QuantumState {
    loop {
        let amps: Vec<Complex64> = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        if let Ok(state) = QuantumState::from_amplitudes(amps) {
            return state;
        }
    }
}

#[test]
fn criterion_1_transform_regression() {
    let started = Instant::now();
    let image = qpie::chessboard_4x4();
    let record = qpie::encode(&image).unwrap();
    let split = QubitSplit::for_record(&record).unwrap();
    for kind in [TransformKind::Haar, TransformKind::Fourier, TransformKind::Hadamard] {
        let transformed = transforms::apply_2d(&record, kind, split).unwrap();
        let decoded = qpie::decode_complex(&transformed, true).unwrap();
        let oracle = transforms::classical_transform(&image, kind).unwrap();
        let err = decoded.max_abs_diff(&oracle);
        assert!(err <= 1e-10, "{kind:?}: max error {err:.3e}");
    }
    pass("criterion 1 (transform regression)", started, 1.0);
}

#[test]
fn criterion_2_haar_circuit_soundness() {
    let started = Instant::now();
    for m in 1..=6 {
        let circuit = transforms::haar_circuit(m).dense_matrix().unwrap();
        let oracle = transforms::haar_matrix(1 << m).unwrap();
        let err = circuit.max_abs_diff(&oracle);
        assert!(err <= 1e-10, "m = {m}: max error {err:.3e}");
    }

    // cubic least-squares fit of the elementary-gate counts for m = 1..10
    let counts: Vec<f64> = (1..=10)
        .map(|m| transforms::haar_elementary_gate_count(m) as f64)
        .collect();
    let basis = |m: f64| [m * m * m, m * m, m, 1.0];
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for (idx, &y) in counts.iter().enumerate() {
        let row = basis((idx + 1) as f64);
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    // Gaussian elimination with partial pivoting
    let mut a = ata;
    let mut b = atb;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut coeffs = [0.0f64; 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for k in row + 1..4 {
            acc -= a[row][k] * coeffs[k];
        }
        coeffs[row] = acc / a[row][row];
    }
    assert!(coeffs[0] > 0.0, "leading coefficient {:.4} not positive", coeffs[0]);
    let max_residual = counts
        .iter()
        .enumerate()
        .map(|(idx, &y)| {
            let row = basis((idx + 1) as f64);
            (y - row.iter().zip(&coeffs).map(|(r, c)| r * c).sum::<f64>()).abs()
        })
        .fold(0.0, f64::max);
    assert!(max_residual <= 20.0, "cubic fit residual {max_residual:.2}");
    for w in counts.windows(2) {
        assert!(w[1] > w[0], "gate count not monotone");
    }
    pass("criterion 2 (Haar circuit soundness)", started, 10.0);
}

fn padded_flat(image: &ImageMatrix) -> Vec<f64> {
    let mut flat = qpie::vectorize(image);
    flat.resize(flat.len().next_power_of_two(), 0.0);
    flat
}

fn check_qhed_against_oracle(image: &ImageMatrix, tol: f64) {
    let record = qpie::encode(image).unwrap();
    let flat = padded_flat(image);
    let n = flat.len();
    let scale = record.scale;

    let even = edge::qhed_even(&record).unwrap();
    for (k, d) in even.differences.iter().enumerate() {
        let want = flat[2 * k] - flat[2 * k + 1];
        assert!((d.re * 2f64.sqrt() * scale - want).abs() <= tol, "even k={k}");
        assert!(d.im.abs() <= tol);
    }

    let odd = edge::qhed_odd(&record).unwrap();
    for (k, d) in odd.differences.iter().enumerate() {
        let want = flat[(2 * k + 1) % n] - flat[(2 * k + 2) % n];
        assert!((d.re * 2f64.sqrt() * scale - want).abs() <= tol, "odd k={k}");
    }

    let full = edge::qhed_ancilla(&record).unwrap();
    for (k, d) in full.differences.iter().enumerate() {
        let want = flat[k] - flat[(k + 1) % n];
        assert!((d.re * 2.0 * scale - want).abs() <= tol, "ancilla k={k}");
    }
}

#[test]
fn criterion_3_qhed_correctness() {
    let started = Instant::now();
    check_qhed_against_oracle(&qpie::edge_demo_4x4(), 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=64);
        let cols = rng.gen_range(1..=64usize.min(4096 / rows));
        let image = ImageMatrix::from_fn(rows, cols, |_, _| rng.gen::<f64>() * 255.0);
        check_qhed_against_oracle(&image, 1e-9);
    }

    // exactly one gate in the processing stage
    assert_eq!(edge::processing_circuit(4).len(), 1);

    // constant images have no edges
    let constant = ImageMatrix::from_fn(8, 8, |_, _| 7.0);
    let record = qpie::encode(&constant).unwrap();
    let result = edge::qhed_even(&record).unwrap();
    assert_eq!(result.success_probability, 0.0);
    assert!(result.differences.iter().all(|d| d.norm() == 0.0));

    pass("criterion 3 (QHED correctness)", started, 5.0);
}

#[test]
fn criterion_4_large_two_region_image() {
    let started = Instant::now();
    // 256x256 binary image, two regions separated by a tilted boundary
    let image = ImageMatrix::from_fn(256, 256, |i, j| {
        if 2 * i + j < 384 {
            1.0
        } else {
            0.0
        }
    });
    assert_eq!(image.rows() * image.cols(), 1 << 16);
    let map = edge::edge_map(&image, Variant::AncillaFull, Scan::Column, 0.0).unwrap();
    let flat = qpie::vectorize(&image);
    let got = qpie::vectorize(&map);
    let n = flat.len();
    for k in 0..n {
        let want = if k == n - 1 { 0.0 } else { flat[k] - flat[k + 1] };
        if want == 0.0 {
            assert!(got[k].abs() <= 1e-9, "spurious edge at {k}");
        } else {
            assert!((got[k] - want).abs() <= 1e-9, "missing edge at {k}");
        }
    }
    pass("criterion 4 (256x256 end-to-end edge map)", started, 5.0);
}

#[test]
fn criterion_5_filtering() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for trial in 0..100 {
        let m = if trial % 2 == 0 { 8 } else { 16 };
        let image = ImageMatrix::from_fn(m, m, |_, _| rng.gen::<f64>() * 10.0 - 5.0);
        let mut w = [[0.0; 3]; 3];
        for row in &mut w {
            for v in row.iter_mut() {
                *v = rng.gen::<f64>() * 2.0 - 1.0;
            }
        }
        let mask = FilterMask::new(w).unwrap();
        let filtered = filtering::apply_filter(&image, &mask).unwrap();
        for i in 0..m {
            for j in 0..m {
                let want = if i == 0 || j == 0 || i == m - 1 || j == m - 1 {
                    image.get(i, j)
                } else {
                    let mut acc = 0.0;
                    for u in 0..3 {
                        for v in 0..3 {
                            acc += mask.weight(u, v) * image.get(i + u - 1, j + v - 1);
                        }
                    }
                    acc
                };
                assert!((filtered.get(i, j) - want).abs() <= 1e-12, "pixel ({i},{j})");
            }
        }
    }

    // unitarity criterion over randomized masks
    for m in [4usize, 8, 16] {
        for trial in 0..40 {
            let mut w = [[0.0; 3]; 3];
            for row in &mut w {
                for v in row.iter_mut() {
                    *v = rng.gen::<f64>() * 2.0 - 1.0;
                }
            }
            if trial % 4 == 0 {
                // force the unitary family
                w = [[0.0; 3]; 3];
                w[1][1] = if trial % 8 == 0 { 1.0 } else { -1.0 };
            }
            let mask = FilterMask::new(w).unwrap();
            let op = filtering::build_filter_operator(&mask, m).unwrap();
            let trivially_unitary = (w[1][1].abs() - 1.0).abs() <= 1e-12
                && w.iter()
                    .flatten()
                    .enumerate()
                    .all(|(idx, &v)| idx == 4 || v.abs() <= 1e-12);
            assert_eq!(filtering::is_unitary(&op, 1e-12), trivially_unitary, "M={m} trial={trial}");
        }
    }
    pass("criterion 5 (filtering)", started, 20.0);
}

#[test]
fn criterion_6_symmetry() {
    let started = Instant::now();
    let image = ImageMatrix::from_rows(vec![vec![1.0, 3.0], vec![2.0, 4.0]]).unwrap();
    let record = qpie::encode(&image).unwrap();
    let rotated = symmetry::rotate_180(&record.state);
    let rotated_record = qpie::EncodingRecord {
        state: rotated.clone(),
        ..record.clone()
    };
    let rotated_image = qpie::decode(&rotated_record, true).unwrap();
    let want = ImageMatrix::from_rows(vec![vec![4.0, 2.0], vec![3.0, 1.0]]).unwrap();
    assert!(rotated_image.max_abs_diff(&want).unwrap() <= 1e-12);

    let overlap = symmetry::inversion_overlap(&record.state);
    assert!((overlap.re - 2.0 / 3.0).abs() <= 1e-12 && overlap.im.abs() <= 1e-15);

    let shots = 10_000u64;
    let est = symmetry::swap_test(&record.state, &rotated, shots, 2024).unwrap();
    let p = 13.0 / 18.0;
    let sigma = (p * (1.0 - p) / shots as f64).sqrt();
    let observed_p_zero = (est.sampled + 1.0) / 2.0;
    assert!(
        (observed_p_zero - p).abs() <= 4.0 * sigma,
        "p0 {observed_p_zero:.5} vs {p:.5} (4 sigma = {:.5})",
        4.0 * sigma
    );
    pass("criterion 6 (symmetry)", started, 5.0);
}

#[test]
fn criterion_7_invariant_suites() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);

    // norm preservation: 1000 random states, n <= 10
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let state = random_state(&mut rng, n);
        let q = QubitIndex::new(rng.gen_range(1..=n)).unwrap();
        let out = match rng.gen_range(0..4) {
            0 => state.apply_gate(&Gate2x2::hadamard(), q).unwrap(),
            1 => state
                .apply_gate(&Gate2x2::phase(rng.gen::<f64>() * std::f64::consts::TAU), q)
                .unwrap(),
            2 => state.qubit_cyclic_right_shift(rng.gen_range(1..=n)).unwrap(),
            _ => state.amplitude_rotate_left(),
        };
        assert!((out.norm() - 1.0).abs() <= 1e-9);
    }

    // circuit-matrix equivalence, n <= 6
    for _ in 0..15 {
        let n = rng.gen_range(1..=6);
        let mut circuit = Circuit::new(n);
        circuit.gate(Gate2x2::hadamard(), QubitIndex::new(rng.gen_range(1..=n)).unwrap());
        if n >= 2 {
            let control = rng.gen_range(1..n);
            circuit.controlled(
                Gate2x2::phase(1.1).to_matrix(),
                vec![QubitIndex::new(control).unwrap()],
                if rng.gen() { Polarity::One } else { Polarity::Zero },
                vec![QubitIndex::new(n).unwrap()],
            );
            circuit.swap(QubitIndex::new(1).unwrap(), QubitIndex::new(n).unwrap());
        }
        circuit.rotate_left();
        let dense = circuit.dense_matrix().unwrap();
        let state = random_state(&mut rng, n);
        let via_circuit = circuit.apply(&state).unwrap();
        let via_matrix = dense.apply(state.amplitudes()).unwrap();
        for (a, b) in via_circuit.amplitudes().iter().zip(via_matrix.iter()) {
            assert!((a - b).norm() <= 1e-10);
        }
    }

    // conditioning probability sum
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let state = random_state(&mut rng, n);
        let q = QubitIndex::new(rng.gen_range(1..=n)).unwrap();
        let p0 = state.condition_on_qubit(q, 0).map(|(_, p)| p).unwrap_or(0.0);
        let p1 = state.condition_on_qubit(q, 1).map(|(_, p)| p).unwrap_or(0.0);
        assert!((p0 + p1 - 1.0).abs() <= 1e-12);
    }

    // permutation bijectivity on explicit basis indices
    for n in 1..=8usize {
        let size = 1usize << n;
        let mut seen = vec![false; size];
        for k in 0..size {
            let mut amps = vec![Complex64::new(0.0, 0.0); size];
            amps[k] = Complex64::new(1.0, 0.0);
            let state = QuantumState::from_amplitudes(amps).unwrap();
            let image = state.qubit_cyclic_right_shift(n).unwrap();
            let target = image
                .amplitudes()
                .iter()
                .position(|a| a.norm() > 0.5)
                .unwrap();
            assert!(!seen[target]);
            seen[target] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    // encode/decode roundtrip
    for _ in 0..50 {
        let rows = rng.gen_range(1..=16);
        let cols = rng.gen_range(1..=16);
        let image = ImageMatrix::from_fn(rows, cols, |_, _| rng.gen::<f64>() + 0.001);
        let record = qpie::encode(&image).unwrap();
        let back = qpie::decode(&record, true).unwrap();
        assert!(back.max_abs_diff(&image).unwrap() <= 1e-12);
    }

    pass("criterion 7 (invariant suites)", started, 30.0);
}
