//! Crate-wide error type. Every fallible operation returns `Result<T, Error>`
//! with a variant naming the violated precondition; nothing in the library
//! panics on caller input.

use thiserror::Error;

use crate::network::{EdgeId, NodeId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate node id {0}")]
    DuplicateNodeId(NodeId),

    #[error("node {node} slot {slot} has dimension 0; slot dimensions must be positive")]
    InvalidDimension { node: NodeId, slot: usize },

    #[error("edge {edge} references unknown node {node}")]
    UnknownNode { edge: usize, node: NodeId },

    #[error("edge {edge} references slot {slot} of node {node}, which has {arity} slots")]
    SlotOutOfRange {
        edge: usize,
        node: NodeId,
        slot: usize,
        arity: usize,
    },

    #[error("slot {slot} of node {node} is covered by more than one edge")]
    SlotReuse { node: NodeId, slot: usize },

    #[error("edge {edge} joins slots of dimension {left} and {right}")]
    DimensionMismatch {
        edge: usize,
        left: usize,
        right: usize,
    },

    #[error("multi-index {idx:?} is invalid for node {node} with dims {dims:?}")]
    IndexOutOfRange {
        node: NodeId,
        idx: Vec<usize>,
        dims: Vec<usize>,
    },

    #[error("no edge with id {0}")]
    UnknownEdge(EdgeId),

    #[error("network has open physical edges; operation requires a closed network")]
    NotClosed,

    #[error("input does not assign exactly the physical edges: {0}")]
    NotTotal(String),

    #[error("vector for physical edge ({node}, {slot}) has length {got}, expected {want}")]
    LengthMismatch {
        node: NodeId,
        slot: usize,
        got: usize,
        want: usize,
    },

    #[error("contraction order is not a permutation of the virtual edges")]
    InvalidOrder,

    #[error("{what} ({size}) exceeds the configured budget ({limit})")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("network must contain at least one node")]
    EmptyNetwork,

    #[error("invalid 2-CNF formula: {0}")]
    InvalidFormula(String),

    #[error("invalid simple graph: {0}")]
    InvalidGraph(String),

    #[error("matrix product state needs at least 3 sites, got {0}")]
    TooSmall(usize),

    #[error("{what} {got} is outside the valid range {range}")]
    OutOfRange {
        what: &'static str,
        got: u128,
        range: String,
    },

    #[error("threshold pair is invalid: {0}")]
    BadThresholds(String),

    #[error("network has a negative or non-real entry; operation requires non-negative data")]
    NotNonNegative,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("blocks do not form a partition of the node set: {0}")]
    NotAPartition(String),

    #[error("block {0} is not connected by its internal edges")]
    DisconnectedBlock(usize),

    #[error("block {0} has no physical edge")]
    NoPhysicalEdge(usize),

    #[error("partition is not injective; no certificate exists")]
    NotInjective,

    #[error(
        "block {0} admits no product-form certificate; its solution space \
         contains only entangled vectors"
    )]
    NoProductCertificate(usize),

    #[error("malformed local term {index}: {reason}")]
    MalformedTerm { index: usize, reason: String },

    #[error("malformed projector guess for term {index}: {reason}")]
    MalformedGuess { index: usize, reason: String },

    #[error("projector guesses rejected: {0}")]
    GuessRejected(String),

    #[error("term matrices contain a negative or non-real entry")]
    NotStoquastic,

    #[error("terms {0} and {1} do not commute on their joint support")]
    NotCommuting(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
