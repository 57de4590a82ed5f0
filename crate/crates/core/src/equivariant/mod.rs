//! Finite-group combinatorics behind the collapse of equivariant spheres.
//!
//! A finite permutation group yields its poset of subgroup conjugacy classes.
//! Spheres supported on convex sets of classes smash by intersection, and a
//! [`CollapseCertificate`] records a class-by-class induction showing that a
//! functor killing one representation sphere kills `S^0`.

mod certificate;
mod group;
mod lattice;
mod rep;
mod sphere;

pub use certificate::{
    generate_collapse_certificate, validate_certificate, CertReport, CertStep, CollapseCertificate, Fact, Rule,
};
pub use group::{mask, members, size, Perm, PermGroup, Subgroup, DEFAULT_ORDER_BOUND};
pub use lattice::{all_subgroups, enumerate_subgroup_classes, ConjugacyPoset, SubgroupClass, WeylGroup};
pub use rep::{fixed_dim, q_identity, q_mul, QMatrix, Representation};
pub use sphere::{
    check_action, cofiber_upset_sequence, interval_smash, untwisting_check, CofiberSequence, IntervalSphere,
};

/// Test groups with preset data.
pub const GROUP_PRESETS: &[&str] = &["trivial", "c2", "c3", "c4", "s3", "d4", "q8", "a4"];

/// Representation presets available for every group.
pub const REP_PRESETS: &[&str] = &["trivial", "sign", "permutation", "standard", "regular", "reduced-regular"];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EquiError {
    #[error("group order exceeds the bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("character average {0} is not a dimension")]
    NonIntegralAverage(String),
    #[error("{0:?} is not downward closed")]
    NotADownset(Vec<usize>),
    #[error("{0:?} is not order-convex")]
    NotConvex(Vec<usize>),
    #[error("no class {0}")]
    ClassOutOfRange(usize),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
}
