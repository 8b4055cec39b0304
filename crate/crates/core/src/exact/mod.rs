//! Exact arithmetic: rationals, polynomials, interval sign tests, chamber
//! integration and Pfaffians.

pub mod bipoly;
pub mod integrate;
pub mod linalg;
pub mod multipoly;
pub mod pfaffian;
pub mod rational;
pub mod sturm;
pub mod unipoly;

pub use bipoly::{AffineUV, BiPoly};
pub use integrate::{integrate_chamber, integrate_uni, Chamber2D, ChamberError};
pub use multipoly::{poly_identity, MultiPoly};
pub use pfaffian::{pfaffians_5, PfaffianError};
pub use rational::{int, parse_rational, rat, Rational};
pub use sturm::{sign_on_interval, IntervalSign};
pub use unipoly::UniPoly;
