//! Exact verification of K-stability certificates for Fano threefolds.
//!
//! The crate encodes divisorial and flag (Abban-Zhuang) computations as
//! declarative certificates over exact rationals, verifies their internal
//! consistency, evaluates the invariants `S`, `beta`, `F_P` and the resulting
//! `delta` bounds, and cross-checks every surface decomposition against an
//! independent Zariski decomposition oracle.

pub mod certify;
pub mod corpus;
pub mod exact;
pub mod lattice;
pub mod zariski;
