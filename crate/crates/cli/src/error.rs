use std::fmt;

use polarcone::GeomError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_WITNESS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DIMENSION: i32 = 65;
pub const EXIT_HYPOTHESIS: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: String,
        message: String,
    },
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    Located {
        line: usize,
        col: usize,
        source: GeomError,
    },
    Geom(GeomError),
    /// A fixture did not reproduce one of its recorded outcomes.
    Expectation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let geom = |e: &GeomError| match e {
            GeomError::DimensionMismatch { .. } => EXIT_DIMENSION,
            GeomError::HypothesisViolated(_) => EXIT_HYPOTHESIS,
            GeomError::SeparationNotFound(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Located { source, .. } => geom(source),
            CliError::Geom(e) => geom(e),
            CliError::Expectation(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            CliError::Parse { line, col, message } => {
                write!(f, "parse error at line {line}, column {col}: {message}")
            }
            CliError::Located { line, col, source } => {
                write!(f, "error at line {line}, column {col}: {source}")
            }
            CliError::Geom(e) => write!(f, "{e}"),
            CliError::Expectation(m) => write!(f, "fixture mismatch: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}
