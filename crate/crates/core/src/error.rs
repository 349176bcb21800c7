use thiserror::Error;

use crate::geom::Kind;

/// Errors raised by the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate pair: both points at ({0}, {1})")]
    DegeneratePair(f64, f64),

    #[error("unsupported comparison between {0:?} and {1:?}")]
    UnsupportedComparison(Kind, Kind),

    #[error("edge ({0}, {1}) is not in the spanning tree")]
    NotInTree(usize, usize),

    #[error("spanning tree is empty")]
    EmptyTree,

    #[error("oracle is capped at {cap} points, got {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("point {0} lies outside the container")]
    OutsideContainer(usize),

    #[error("anchored growth needs {needed} outside points, only {available} available")]
    GrowInfeasible { needed: usize, available: usize },

    #[error("base case needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("recursion invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
