use thiserror::Error;

use crate::model::ValidationReport;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{requested} edges requested but a simple graph on {nodes} nodes has at most {max}")]
    TooManyEdges {
        requested: usize,
        nodes: usize,
        max: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("cell ({x}, {y}) is occupied by node {occupant}")]
    Occupied { x: i64, y: i64, occupant: usize },
    #[error("node {0} is not placed")]
    NotPlaced(usize),
    #[error("swapping nodes {0} and {1} would overlap other nodes")]
    InadmissibleSwap(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("separation constraints contain a cycle")]
    CyclicConstraints,
    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("objective pair ({0}, {0}) relates a variable to itself")]
    SelfPair(usize),
    #[error("non-finite value in problem: {0}")]
    NonFinite(&'static str),
    #[error("problem too large for exhaustive search: {vars} variables, {constraints} constraints")]
    OracleScope { vars: usize, constraints: usize },
    #[error("malformed problem dump at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
