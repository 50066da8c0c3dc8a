//! JSON run reports and CSV amplitude dumps. Reports are deterministic for
//! a fixed config and seed except for `wall_time_ms`.

use std::fs;
use std::path::Path;

use serde::Serialize;

use qimp_core::qpie::EncodingRecord;

use crate::error::CliError;

#[derive(Debug, Serialize, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_qubits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub encoding_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_unitary: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_overlap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_overlap_sq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_euclidean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_fidelity: Option<f64>,
    /// Wall time of the run; the only field that varies between runs.
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(command: &str, inputs: &[&Path]) -> Self {
        Report {
            command: command.to_string(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut body = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Input(format!("report serialization: {e}")))?;
        body.push('\n');
        fs::write(path, body)?;
        Ok(())
    }
}

/// Columns: index, computational-basis label (qubit 1 leftmost), real, imag.
pub fn write_amplitudes(record: &EncodingRecord, path: &Path) -> Result<(), CliError> {
    let n = record.state.num_qubits();
    let mut out = String::from("index,basis,real,imag\n");
    for (k, amp) in record.state.amplitudes().iter().enumerate() {
        out.push_str(&format!("{k},{k:0n$b},{},{}\n", amp.re, amp.im, n = n.max(1)));
    }
    fs::write(path, out)?;
    Ok(())
}
