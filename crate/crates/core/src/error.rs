use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("sensor graph still disconnected after {attempts} attempts (n={n}, k={k})")]
    Disconnected { n: usize, k: usize, attempts: u32 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        got: String,
    },

    #[error("spectral response is non-positive ({value:e}) at eigenvalue {eigenvalue:e}")]
    NonPositiveResponse { eigenvalue: f64, value: f64 },

    #[error("subgradient of the nuclear norm requested at the zero matrix; re-randomize the initial operator")]
    ZeroSubgradient,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("KKT system is singular; the sampling operator is degenerate")]
    SingularKkt,

    #[error("graph has no vertex coordinates")]
    MissingCoordinates,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("trial {index} failed: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub(crate) fn dims(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}
