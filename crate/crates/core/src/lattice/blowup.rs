//! Intersection tables of smooth blowups and Atiyah flops.
//!
//! For the blowup `pi: Y -> X` of a smooth curve `C` of genus `g` with
//! exceptional divisor `E`:
//!
//! * `E^3 = -deg N_{C/X}` with `deg N_{C/X} = -K_X.C + 2g - 2`,
//! * `pi*D . E^2 = -D.C`,
//! * `pi*D . pi*D' . E = 0`,
//! * products of pullbacks are unchanged, and `-K_Y = pi*(-K_X) - E`.
//!
//! For the blowup of a point, `E^3 = 1`, every product involving both `E` and a
//! pullback vanishes, and `-K_Y = pi*(-K_X) - 2E`.
//!
//! The flop of a K-trivial `(-1,-1)`-curve `gamma` keeps the divisor lattice
//! (strict transforms) and changes the cubic form by `D^3 -> D^3 - (D.gamma)^3`.

use num_traits::{One, Zero};

use super::class::DivisorClass;
use super::threefold::ThreefoldGeometry;
use super::LatticeError;
use crate::exact::{int, Rational};

/// Numerical data of a smooth curve used as a blowup center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCenter {
    pub genus: i64,
    /// `D.C` for every basis divisor `D`.
    pub degrees: Vec<Rational>,
    /// `K_X.C`.
    pub canonical_dot: Rational,
}

fn extended_entries(g: &ThreefoldGeometry) -> Vec<([usize; 3], Rational)> {
    g.entries().map(|(k, v)| (k, v.clone())).collect()
}

fn extend(c: &DivisorClass, last: Rational) -> DivisorClass {
    let mut coords = c.coords.clone();
    coords.push(last);
    DivisorClass::new(coords)
}

/// Blows up a smooth curve, naming the exceptional divisor `exceptional`.
///
/// The new geometry carries no test curves (curves meeting the center change
/// their intersection numbers); callers attach them explicitly.
pub fn blowup_along_curve(
    g: &ThreefoldGeometry,
    name: impl Into<String>,
    exceptional: impl Into<String>,
    center: &CurveCenter,
) -> Result<ThreefoldGeometry, LatticeError> {
    let n = g.rank();
    if center.degrees.len() != n {
        return Err(LatticeError::Dimension(format!(
            "blowup center on {} has {} degrees, basis has {n}",
            g.name,
            center.degrees.len()
        )));
    }
    let minus_k_dot = g.anticanonical.dot(&center.degrees);
    if minus_k_dot != -&center.canonical_dot {
        return Err(LatticeError::InconsistentCenter {
            geometry: g.name.clone(),
            reason: format!(
                "K.C is declared {} but the degrees give {}",
                center.canonical_dot, -minus_k_dot
            ),
        });
    }
    if center.genus < 0 {
        return Err(LatticeError::InconsistentCenter {
            geometry: g.name.clone(),
            reason: "negative genus".into(),
        });
    }
    let deg_normal = &minus_k_dot + int(2 * center.genus - 2);
    let e = n;
    let mut entries = extended_entries(g);
    entries.push(([e, e, e], -deg_normal));
    for (i, d) in center.degrees.iter().enumerate() {
        entries.push(([i, e, e], -d));
    }
    let mut basis = g.basis.clone();
    basis.push(exceptional.into());
    let anticanonical = extend(&g.anticanonical, -Rational::one());
    let cube = &g.anticanonical_cube_expected - int(2) * &minus_k_dot + int(2 * center.genus - 2);
    ThreefoldGeometry::new(name, basis, entries, anticanonical, Vec::new(), cube)
}

/// Blows up a point, naming the exceptional divisor `exceptional`.
pub fn blowup_at_point(
    g: &ThreefoldGeometry,
    name: impl Into<String>,
    exceptional: impl Into<String>,
) -> Result<ThreefoldGeometry, LatticeError> {
    let e = g.rank();
    let mut entries = extended_entries(g);
    entries.push(([e, e, e], Rational::one()));
    let mut basis = g.basis.clone();
    basis.push(exceptional.into());
    let anticanonical = extend(&g.anticanonical, int(-2));
    let cube = &g.anticanonical_cube_expected - int(8);
    ThreefoldGeometry::new(name, basis, entries, anticanonical, Vec::new(), cube)
}

/// Flops a K-trivial `(-1,-1)`-curve with intersection vector `gamma`.
pub fn flop(
    g: &ThreefoldGeometry,
    name: impl Into<String>,
    gamma: &[Rational],
) -> Result<ThreefoldGeometry, LatticeError> {
    let n = g.rank();
    if gamma.len() != n {
        return Err(LatticeError::Dimension(format!(
            "flopping curve on {} has wrong length",
            g.name
        )));
    }
    let k = g.anticanonical.dot(gamma);
    if !k.is_zero() {
        return Err(LatticeError::NotFloppable {
            geometry: g.name.clone(),
            k_degree: k,
        });
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            for l in j..n {
                let v = g.triple(i, j, l) - &gamma[i] * &gamma[j] * &gamma[l];
                if !v.is_zero() {
                    entries.push(([i, j, l], v));
                }
            }
        }
    }
    ThreefoldGeometry::new(
        name,
        g.basis.clone(),
        entries,
        g.anticanonical.clone(),
        Vec::new(),
        g.anticanonical_cube_expected.clone(),
    )
}
