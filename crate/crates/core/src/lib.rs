//! Computational core of the `dualkit` workbench: string-diagram rewriting
//! with proof-trace validation, exact model categories with duals and
//! cofibers, idempotent splitting machinery, and equivariant collapse
//! certificates for finite groups.

pub mod diagram;
pub mod equivariant;
pub mod exactlin;
pub mod idem;
pub mod models;
