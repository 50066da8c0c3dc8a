//! `qimp`: run the quantum image pipelines on PGM files from the shell.

mod error;
mod pgm;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qimp_core::edge::{self, Scan, Variant};
use qimp_core::filtering::{self, FilterMask};
use qimp_core::metrics;
use qimp_core::qpie;
use qimp_core::symmetry;
use qimp_core::transforms::{self, QubitSplit, TransformKind};
use qimp_core::ImageMatrix;

use error::CliError;
use pgm::WriteMode;
use report::Report;

#[derive(Parser)]
#[command(name = "qimp", version, about = "Quantum image processing pipelines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Haar,
    Fourier,
    Hadamard,
}

impl From<KindArg> for TransformKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Haar => TransformKind::Haar,
            KindArg::Fourier => TransformKind::Fourier,
            KindArg::Hadamard => TransformKind::Hadamard,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Even,
    Odd,
    Ancilla,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Even => Variant::EvenPairs,
            VariantArg::Odd => Variant::OddPairs,
            VariantArg::Ancilla => Variant::AncillaFull,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanArg {
    Column,
    Row,
}

impl From<ScanArg> for Scan {
    fn from(s: ScanArg) -> Self {
        match s {
            ScanArg::Column => Scan::Column,
            ScanArg::Row => Scan::Row,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Rescale,
    Signed,
}

impl From<ModeArg> for WriteMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Rescale => WriteMode::Rescale,
            ModeArg::Signed => WriteMode::SignedSymmetric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude-encode an image and dump the state or an encoding report.
    Encode {
        input: PathBuf,
        /// CSV dump of the encoded amplitudes
        #[arg(long)]
        amplitudes: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply a 2D wavelet/Fourier/Hadamard circuit and decode the result.
    Transform {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "signed")]
        mode: ModeArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Detect pixel boundaries with the Hadamard-difference pipeline.
    Edge {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ancilla")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "column")]
        scan: ScanArg,
        /// Positive value renders a binary boundary map
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "signed")]
        mode: ModeArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply a 3x3 neighborhood mask through the sparse filter operator.
    Filter {
        input: PathBuf,
        /// Text file with 9 whitespace-separated weights (row-major)
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "rescale")]
        mode: ModeArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Estimate 180-degree rotation symmetry via the SWAP test.
    Symmetry {
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Verdict: symmetric if |overlap| is at least this
        #[arg(long, default_value_t = 0.99)]
        threshold: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare two images: relative distance and state fidelity.
    Compare {
        reference: PathBuf,
        candidate: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read_mask(path: &Path) -> Result<FilterMask, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::read_side(e, path))?;
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split_ascii_whitespace() {
            let v: f64 = token.parse().map_err(|_| {
                CliError::Input(format!("{}: bad mask weight {token:?}", path.display()))
            })?;
            values.push(v);
        }
    }
    if values.len() != 9 {
        return Err(CliError::Input(format!(
            "{}: expected 9 mask weights, found {}",
            path.display(),
            values.len()
        )));
    }
    let mut w = [[0.0; 3]; 3];
    for (idx, v) in values.into_iter().enumerate() {
        w[idx / 3][idx % 3] = v;
    }
    Ok(FilterMask::new(w)?)
}

fn finish(report: Report, path: Option<&Path>, started: Instant) -> Result<(), CliError> {
    let mut report = report;
    report.wall_time_ms = started.elapsed().as_secs_f64() * 1000.0;
    match path {
        Some(p) => report.write(p),
        None => {
            let mut body = serde_json::to_string(&report)
                .map_err(|e| CliError::Input(format!("report serialization: {e}")))?;
            body.push('\n');
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Encode {
            input,
            amplitudes,
            report,
        } => {
            let image = pgm::read_image(&input)?;
            let record = qpie::encode(&image)?;
            if let Some(path) = &amplitudes {
                report::write_amplitudes(&record, path)?;
            }
            let mut r = Report::new("encode", &[&input]);
            r.rows = Some(image.rows());
            r.cols = Some(image.cols());
            r.num_qubits = Some(record.state.num_qubits());
            r.encoding_scale = Some(record.scale);
            finish(r, report.as_deref(), started)
        }
        Command::Transform {
            input,
            kind,
            output,
            mode,
            report,
        } => {
            let image = pgm::read_image(&input)?;
            let record = qpie::encode(&image)?;
            let split = QubitSplit::for_record(&record)?;
            let kind = TransformKind::from(kind);
            let transformed = transforms::apply_2d(&record, kind, split)?;
            let decoded = qpie::decode_complex(&transformed, true)?;
            // Fourier output is complex: render magnitudes; the others are
            // real and keep their sign
            let (rendered, mode) = if kind == TransformKind::Fourier {
                let m = ImageMatrix::from_fn(decoded.rows(), decoded.cols(), |i, j| {
                    decoded.get(i, j).norm()
                });
                (m, WriteMode::Rescale)
            } else {
                let m = ImageMatrix::from_fn(decoded.rows(), decoded.cols(), |i, j| {
                    decoded.get(i, j).re
                });
                (m, WriteMode::from(mode))
            };
            pgm::write_image(&rendered, &output, mode)?;
            let mut r = Report::new("transform", &[&input]);
            r.rows = Some(image.rows());
            r.cols = Some(image.cols());
            r.num_qubits = Some(record.state.num_qubits());
            r.transform_kind = Some(format!("{kind:?}").to_lowercase());
            r.gate_count = Some(
                (transforms::transform_circuit(kind, split.row_qubits).len()
                    + transforms::transform_circuit(kind, split.col_qubits).len())
                    as u64,
            );
            finish(r, report.as_deref(), started)
        }
        Command::Edge {
            input,
            variant,
            scan,
            threshold,
            output,
            mode,
            report,
        } => {
            if threshold < 0.0 {
                return Err(CliError::Input("threshold must be nonnegative".into()));
            }
            let image = pgm::read_image(&input)?;
            let variant = Variant::from(variant);
            let scan = Scan::from(scan);
            let map = edge::edge_map(&image, variant, scan, threshold)?;
            pgm::write_image(&map, &output, mode.into())?;

            // re-run the conditioning to report its success probability
            let record = match scan {
                Scan::Column => qpie::encode(&image)?,
                Scan::Row => qpie::transpose_encode(&image)?,
            };
            let result = match variant {
                Variant::EvenPairs => edge::qhed_even(&record)?,
                Variant::OddPairs => edge::qhed_odd(&record)?,
                Variant::AncillaFull => edge::qhed_ancilla(&record)?,
            };
            let mut r = Report::new("edge", &[&input]);
            r.rows = Some(image.rows());
            r.cols = Some(image.cols());
            r.num_qubits = Some(record.state.num_qubits());
            r.edge_variant = Some(
                match variant {
                    Variant::EvenPairs => "even",
                    Variant::OddPairs => "odd",
                    Variant::AncillaFull => "ancilla",
                }
                .to_string(),
            );
            r.scan = Some(format!("{scan:?}").to_lowercase());
            r.success_probability = Some(result.success_probability);
            r.threshold = Some(threshold);
            r.gate_count = Some(edge::processing_circuit(record.state.num_qubits()).len() as u64);
            finish(r, report.as_deref(), started)
        }
        Command::Filter {
            input,
            mask,
            output,
            mode,
            report,
        } => {
            let image = pgm::read_image(&input)?;
            let mask = read_mask(&mask)?;
            let filtered = filtering::apply_filter(&image, &mask)?;
            pgm::write_image(&filtered, &output, mode.into())?;
            let operator = filtering::build_filter_operator(&mask, image.rows())?;
            let mut r = Report::new("filter", &[&input]);
            r.rows = Some(image.rows());
            r.cols = Some(image.cols());
            r.mask_unitary = Some(filtering::is_unitary(&operator, 1e-12));
            finish(r, report.as_deref(), started)
        }
        Command::Symmetry {
            input,
            shots,
            seed,
            threshold,
            report,
        } => {
            if !(0.0..=1.0).contains(&threshold) {
                return Err(CliError::Input("threshold must lie in [0, 1]".into()));
            }
            let image = pgm::read_image(&input)?;
            let record = qpie::encode(&image)?;
            let rotated = symmetry::rotate_180(&record.state);
            let est = symmetry::swap_test(&record.state, &rotated, shots, seed)?;
            let overlap = est.analytic.norm();
            let mut r = Report::new("symmetry", &[&input]);
            r.rows = Some(image.rows());
            r.cols = Some(image.cols());
            r.num_qubits = Some(record.state.num_qubits());
            r.analytic_overlap = Some(est.analytic.re);
            r.sampled_overlap_sq = Some(est.sampled);
            r.symmetric = Some(overlap >= threshold);
            r.threshold = Some(threshold);
            r.shots = Some(shots);
            r.seed = Some(seed);
            finish(r, report.as_deref(), started)
        }
        Command::Compare {
            reference,
            candidate,
            report,
        } => {
            let b = pgm::read_image(&reference)?;
            let a = pgm::read_image(&candidate)?;
            let (distance, max_err) = metrics::compare_images(&a, &b)?;
            let fidelity =
                metrics::state_fidelity(&qpie::encode(&a)?.state, &qpie::encode(&b)?.state)?;
            let mut r = Report::new("compare", &[&reference, &candidate]);
            r.rows = Some(b.rows());
            r.cols = Some(b.cols());
            r.relative_euclidean = Some(distance);
            r.max_abs_error = Some(max_err);
            r.state_fidelity = Some(fidelity);
            finish(r, report.as_deref(), started)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error ({}): {}", err.category(), err);
        std::process::exit(err.exit_code());
    }
}
