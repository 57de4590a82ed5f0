//! String diagrams in free braided or symmetric monoidal categories with
//! chosen duals, twists and formal inverses.
//!
//! A [`Diagram`] is a domain word plus a list of layers, each holding one
//! non-identity cell at an offset. Proofs are checked as [`RewriteTrace`]s:
//! every step names a rule, a direction and a location, and replaying the
//! steps from `start` must land exactly on `end`.

mod corpus;
mod eval;
mod graph;
mod rewrite;
mod signature;
mod term;
mod trace;

pub use corpus::{bundled, bundled_trace, BUNDLED};
pub use eval::{evaluate, Interpretation};
pub use graph::{equal_symmetric, normalize_symmetric, Node, OpenGraph, Port};
pub use rewrite::{apply_rule, Direction, Location, RewriteRule, RuleKind, RuleSet, Schema};
pub use signature::{show_word, word, DualPair, Flavor, GeneratorDecl, Letter, ObjectWord, Signature};
pub use term::{Cell, Diagram, Layer};
pub use trace::{validate_trace, Hypothesis, RewriteTrace, TraceReport, TraceStep};

use thiserror::Error;

use crate::models::ModelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("signature: {0}")]
    Signature(String),
    #[error("ill-typed diagram: {0}")]
    Ill(String),
    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: String, found: String },
    #[error("rule {rule} does not match at slice {slice}, offset {offset}")]
    NoMatchAtLocation { rule: String, slice: usize, offset: usize },
    #[error("unknown rule {0}")]
    UnknownRule(String),
    #[error("unsupported cell {0}")]
    UnsupportedCell(String),
    #[error("graph normal form needs the symmetric flavor")]
    WrongFlavor,
    #[error("no assignment for {0}")]
    MissingAssignment(String),
    #[error("{0} is not invertible in the model")]
    NotInvertible(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
