//! Surface divisor lattices with a Gram form and a list of Mori cone generators.

use num_traits::{Signed, Zero};

use super::class::{AffineClass, DivisorClass};
use super::threefold::ThreefoldGeometry;
use super::LatticeError;
use crate::exact::linalg::Matrix;
use crate::exact::{AffineUV, BiPoly, Rational};

/// A listed curve on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCurve {
    pub name: String,
    pub class: DivisorClass,
    /// Self-intersection zero; used for nefness tests, never enters a Zariski support.
    pub zero_curve: bool,
}

/// Surface with symmetric Gram form and listed negative (or zero) curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGeometry {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Matrix,
    pub curves: Vec<SurfaceCurve>,
    /// Asserts that the listed curves generate the Mori cone.
    pub cone_complete: bool,
}

impl SurfaceGeometry {
    /// Validates symmetry of the Gram matrix and the self-intersections of listed curves.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        gram: Matrix,
        curves: Vec<SurfaceCurve>,
        cone_complete: bool,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        let n = basis.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Dimension(format!("Gram matrix of {name} is not {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(name));
                }
            }
        }
        let s = SurfaceGeometry {
            name,
            basis,
            gram,
            curves: Vec::new(),
            cone_complete,
        };
        for c in &curves {
            if c.class.len() != n {
                return Err(LatticeError::Dimension(format!(
                    "curve {} on {} has wrong length",
                    c.name, s.name
                )));
            }
            let sq = s.dot(&c.class, &c.class);
            let ok = if c.zero_curve { sq.is_zero() } else { sq.is_negative() };
            if !ok {
                return Err(LatticeError::BadCurve {
                    surface: s.name.clone(),
                    curve: c.name.clone(),
                    self_intersection: sq,
                });
            }
        }
        Ok(SurfaceGeometry { curves, ..s })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn curve(&self, name: &str) -> Option<&SurfaceCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Intersection of constant classes.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * bj * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// Intersection of an affine class with a constant class.
    pub fn dot_affine(&self, a: &AffineClass, b: &DivisorClass) -> AffineUV {
        let mut acc = AffineUV::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            let mut w = Rational::zero();
            for (j, bj) in b.coords.iter().enumerate() {
                w += bj * &self.gram[i][j];
            }
            if !w.is_zero() {
                acc = &acc + &ai.scale(&w);
            }
        }
        acc
    }

    /// Self-intersection of an affine class, a quadratic polynomial in `(u, v)`.
    pub fn square_affine(&self, a: &AffineClass) -> BiPoly {
        let mut acc = BiPoly::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            for (j, aj) in a.coords.iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    acc = &acc + &(ai * aj).scale(&self.gram[i][j]);
                }
            }
        }
        acc
    }
}

/// Linear map from a threefold lattice to a surface lattice, with the class of
/// the surface on the threefold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMap {
    /// Image of each threefold basis divisor.
    pub images: Vec<DivisorClass>,
    pub surface_class: DivisorClass,
}

impl RestrictionMap {
    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let n = self.images.first().map_or(0, DivisorClass::len);
        let mut out = DivisorClass::zero(n);
        for (c, img) in d.coords.iter().zip(&self.images) {
            if !c.is_zero() {
                out = &out + &img.scale(c);
            }
        }
        out
    }

    /// Restriction of a polynomial class; coordinates stay polynomials in `u`.
    pub fn apply_poly(&self, p: &super::class::PolyClass) -> super::class::PolyClass {
        let n = self.images.first().map_or(0, DivisorClass::len);
        let mut out = super::class::PolyClass::zero(n);
        for (c, img) in p.coords.iter().zip(&self.images) {
            if !c.is_zero() {
                out = &out + &super::class::PolyClass::from_scaled(img, c);
            }
        }
        out
    }
}

/// One failed compatibility equation of a restriction map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMismatch {
    pub pair: (String, String),
    pub threefold: Rational,
    pub surface: Rational,
}

/// Lists every basis pair `(D1, D2)` with `D1 * D2 * S != res(D1) . res(D2)`.
pub fn restriction_mismatches(
    g: &ThreefoldGeometry,
    s: &SurfaceGeometry,
    r: &RestrictionMap,
) -> Result<Vec<RestrictionMismatch>, LatticeError> {
    let n = g.rank();
    if r.images.len() != n || r.surface_class.len() != n {
        return Err(LatticeError::Dimension(format!(
            "restriction map from {} has wrong source dimension",
            g.name
        )));
    }
    if r.images.iter().any(|i| i.len() != s.rank()) {
        return Err(LatticeError::Dimension(format!(
            "restriction map to {} has wrong target dimension",
            s.name
        )));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let di = DivisorClass::unit(n, i);
            let dj = DivisorClass::unit(n, j);
            let t = g.triple_const(&di, &dj, &r.surface_class);
            let q = s.dot(&r.images[i], &r.images[j]);
            if t != q {
                out.push(RestrictionMismatch {
                    pair: (g.basis[i].clone(), g.basis[j].clone()),
                    threefold: t,
                    surface: q,
                });
            }
        }
    }
    Ok(out)
}

/// `true` iff `D1 * D2 * S = res(D1) . res(D2)` for all basis pairs.
pub fn check_restriction(
    g: &ThreefoldGeometry,
    s: &SurfaceGeometry,
    r: &RestrictionMap,
) -> Result<bool, LatticeError> {
    Ok(restriction_mismatches(g, s, r)?.is_empty())
}
