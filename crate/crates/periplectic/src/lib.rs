#![forbid(unsafe_code)]

//! Diagram combinatorics of simple modules over the periplectic Lie
//! superalgebra `p(n)`.
//!
//! A dominant weight is encoded as a configuration of balls on the integer
//! line; everything else is derived from that picture: solid arrows and caps,
//! the action of the Duflo-Serganova functor (removal of a maximal cap), the
//! worthiness criterion, the rooted forest of a worthy weight, and the
//! closed-form superdimension `|F|!/F!`. Brute-force oracles cross-validate
//! every closed formula on an exhaustive small-rank corpus.

pub mod cap;
pub mod ds;
pub mod duality;
pub mod forest;
pub mod json;
pub mod oracle;
pub mod render;
pub mod translation;
pub mod weight;

pub use cap::{Arrow, Cap, CapDiagram, CapRef, Cluster};
pub use ds::{DsFactor, DsResult, IteratedFactor, SimpleModule};
pub use forest::{ForestNode, RootedForest};
pub use oracle::{VerifyFailure, VerifyReport};
pub use weight::{DominantWeight, Parity, WeightDiagram};

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("bad range: expected i < j, got i={i}, j={j}")]
    BadRange { i: i64, j: i64 },
    #[error("empty corpus: span {span} is smaller than rank {n}")]
    EmptyCorpus { n: usize, span: i64 },
    #[error("cap ({0}, {1}) is not a cap of this diagram")]
    UnknownCap(i64, i64),
    #[error("position {0} is not a ball")]
    NotABall(i64),
    #[error("ball at position {0} is not removable (fails the initial segment condition)")]
    NotRemovable(i64),
    #[error("iteration depth {depth} exceeds rank {rank}")]
    BadDepth { depth: usize, rank: usize },
    #[error("weight is not worthy; it has no rooted forest")]
    NotWorthy,
    #[error("forest with {size} nodes exceeds the exhaustive-count cap {cap}")]
    CorpusTooLarge { size: usize, cap: usize },
    #[error("parse error in field `{field}`: {reason}")]
    Parse { field: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
