use thiserror::Error;

use crate::fatgraph::ValidationReport;

/// Unified error type for the crate.
///
/// Validation violations are data, not errors; `InvalidGraph` is raised only
/// when an operation that requires a valid graph is handed an invalid one.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("graph fails validation: {0}")]
    InvalidGraph(ValidationReport),

    #[error("unknown standard cycle id {0}")]
    UnknownCycleId(usize),

    #[error("cannot delete every standard cycle; the subset must be proper")]
    DeletingEverything,

    #[error("simple cycle count exceeds cap {0}")]
    CycleCapExceeded(usize),

    #[error("node {0} has valence {1}; this operation requires a 4-regular graph")]
    NotFourRegular(String, usize),

    #[error("edge set is not a simple cycle: {0}")]
    NotACycle(String),

    #[error("no length assigned to {0}")]
    MissingLength(String),

    #[error("metric names {0}, which is not an edge or circle of the graph")]
    UnknownMetricTarget(String),

    #[error("length for {0} is not strictly positive")]
    NonPositiveLength(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("equality constraints are inconsistent")]
    InconsistentEqualities,

    #[error("graph has no edges and no circles")]
    EmptyGraph,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: slot {node}.{slot} is declared but never paired")]
    DanglingSlot { line: usize, node: String, slot: usize },

    #[error("adjacency lists disagree: {a} mentions {b} {count_ab} time(s) but {b} mentions {a} {count_ba} time(s)")]
    MismatchedOccurrenceCounts {
        a: String,
        b: String,
        count_ab: usize,
        count_ba: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
