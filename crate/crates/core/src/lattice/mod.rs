//! Divisor lattices of threefolds and surfaces: intersection forms, blowup
//! and flop derivations, restriction maps and effective-monoid decomposition.

pub mod blowup;
pub mod class;
pub mod expr;
pub mod monoid;
pub mod surface;
pub mod threefold;

use thiserror::Error;

use crate::exact::Rational;

pub use blowup::{blowup_along_curve, blowup_at_point, flop, CurveCenter};
pub use class::{AffineClass, DivisorClass, PolyClass};
pub use expr::{
    parse_affine, parse_class_expr, parse_functional, parse_gram_entry, parse_scalar, parse_triple_entry,
    parse_upoly, ClassExpr, ExprError,
};
pub use monoid::monoid_decompose;
pub use surface::{
    check_restriction, restriction_mismatches, RestrictionMap, RestrictionMismatch, SurfaceCurve,
    SurfaceGeometry,
};
pub use threefold::{TestCurve, ThreefoldGeometry};

/// Errors raised while building or combining lattices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("geometry {geometry}: conflicting values for triple entry {entry}")]
    InconsistentTriple { geometry: String, entry: String },
    #[error("geometry {geometry}: anticanonical cube is {computed}, expected {expected}")]
    CubeMismatch {
        geometry: String,
        expected: Rational,
        computed: Rational,
    },
    #[error("surface {0}: Gram matrix is not symmetric")]
    NotSymmetric(String),
    #[error("surface {surface}: curve {curve} has self-intersection {self_intersection}")]
    BadCurve {
        surface: String,
        curve: String,
        self_intersection: Rational,
    },
    #[error("blowup of {geometry}: inconsistent center data ({reason})")]
    InconsistentCenter { geometry: String, reason: String },
    #[error("flop of {geometry}: curve is not K-trivial (-K.C = {k_degree})")]
    NotFloppable { geometry: String, k_degree: Rational },
    #[error("unknown basis element `{0}`")]
    UnknownName(String),
}
