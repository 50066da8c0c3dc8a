//! CLI error categories and their exit codes: 2 input, 3 numeric contract,
//! 4 I/O.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    UnsupportedFormat(String),
    CorruptHeader(String),
    TruncatedData(String),
    Input(String),
    Numeric(qimp_core::Error),
    Io(std::io::Error),
}

impl CliError {
    /// Missing referenced files are config/input errors, not I/O failures.
    pub fn read_side(err: std::io::Error, path: &std::path::Path) -> Self {
        if err.kind() == std::io::ErrorKind::NotFound {
            CliError::Input(format!("{}: file not found", path.display()))
        } else {
            CliError::Io(err)
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnsupportedFormat(_)
            | CliError::CorruptHeader(_)
            | CliError::TruncatedData(_)
            | CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::UnsupportedFormat(_) => "unsupported-format",
            CliError::CorruptHeader(_) => "corrupt-header",
            CliError::TruncatedData(_) => "truncated-data",
            CliError::Input(_) => "input",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::UnsupportedFormat(msg)
            | CliError::CorruptHeader(msg)
            | CliError::TruncatedData(msg)
            | CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Numeric(err) => write!(f, "{err}"),
            CliError::Io(err) => write!(f, "{err}"),
        }
    }
}

impl From<qimp_core::Error> for CliError {
    fn from(err: qimp_core::Error) -> Self {
        CliError::Numeric(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}
