use thiserror::Error;

use crate::instance::Violation;
use crate::treewidth::TdError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid tree decomposition: {}", format_td_errors(.0))]
    InvalidDecomposition(Vec<TdError>),

    #[error("decomposition too wide for the table encoding: bag of {bag} vertices with {radix} count values")]
    TooWide { bag: usize, radix: usize },

    #[error("{what} oracle refuses inputs of size {actual} (limit {limit})")]
    OracleGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error(
        "color coding with k*d = {kd} needs too many repetitions; use branching or brute force"
    )]
    ColorCodingTooLarge { kd: usize },

    #[error("set {index} has {size} elements, more than the bound d = {d}")]
    SetTooLarge { index: usize, size: usize, d: usize },

    #[error("witness is not a valid solution ({} violations)", .0.len())]
    InvalidWitness(Vec<Violation>),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

fn format_td_errors(errors: &[TdError]) -> String {
    errors
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
