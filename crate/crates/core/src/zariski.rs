//! Pointwise Zariski decomposition on a surface with a listed Mori cone.
//!
//! The oracle keeps a support set of negative curves, solves the Gram system
//! that makes the positive part orthogonal to the support, adds every listed
//! negative curve on which the positive part is still negative, and repeats
//! until nothing changes.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::linalg::{is_negative_definite, solve, Matrix};
use crate::exact::Rational;
use crate::lattice::{DivisorClass, SurfaceGeometry};

/// Positive part and negative part (curve name, coefficient) of a divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiResult {
    pub positive: DivisorClass,
    /// Nonzero coefficients in the order the curves are listed on the surface.
    pub negative: Vec<(String, Rational)>,
}

/// Failure modes of [`zariski_at`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZariskiError {
    #[error("surface {0}: the curve list is not marked as generating the Mori cone")]
    ConeIncomplete(String),
    #[error("surface {surface}: class is not pseudo-effective ({reason})")]
    NotPseudoEffective { surface: String, reason: String },
    #[error("class has {found} coordinates, surface {surface} has rank {rank}")]
    Dimension {
        surface: String,
        found: usize,
        rank: usize,
    },
}

impl ZariskiResult {
    /// Self-intersection of the positive part.
    pub fn volume(&self, s: &SurfaceGeometry) -> Rational {
        s.dot(&self.positive, &self.positive)
    }

    /// `P = ..., N = ...` in the surface basis and curve names.
    pub fn render(&self, s: &SurfaceGeometry) -> String {
        let n: Vec<String> = self.negative.iter().map(|(c, q)| format!("{q}*{c}")).collect();
        let n = if n.is_empty() { "0".to_string() } else { n.join(" + ") };
        format!("P = {}, N = {n}", self.positive.render(&s.basis))
    }

    /// Coefficient of a named curve in the negative part (zero if absent).
    pub fn coefficient(&self, name: &str) -> Rational {
        self.negative
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Names of violated decomposition invariants; empty for a valid result.
    pub fn violations(&self, s: &SurfaceGeometry) -> Vec<String> {
        let mut out = Vec::new();
        let mut support = Vec::new();
        for (name, c) in &self.negative {
            if c.is_negative() {
                out.push(format!("negative coefficient on {name}"));
            }
            match s.curve(name) {
                Some(curve) => {
                    if !s.dot(&self.positive, &curve.class).is_zero() {
                        out.push(format!("positive part not orthogonal to {name}"));
                    }
                    support.push(curve.class.clone());
                }
                None => out.push(format!("unknown curve {name}")),
            }
        }
        for curve in &s.curves {
            if s.dot(&self.positive, &curve.class).is_negative() {
                out.push(format!("positive part negative on {}", curve.name));
            }
        }
        if !support.is_empty() && !is_negative_definite(&gram_of(s, &support)) {
            out.push("support Gram matrix is not negative definite".into());
        }
        out
    }
}

fn gram_of(s: &SurfaceGeometry, classes: &[DivisorClass]) -> Matrix {
    classes
        .iter()
        .map(|a| classes.iter().map(|b| s.dot(a, b)).collect())
        .collect()
}

/// Zariski decomposition of `d` on `s`.
pub fn zariski_at(s: &SurfaceGeometry, d: &DivisorClass) -> Result<ZariskiResult, ZariskiError> {
    if !s.cone_complete {
        return Err(ZariskiError::ConeIncomplete(s.name.clone()));
    }
    if d.len() != s.rank() {
        return Err(ZariskiError::Dimension {
            surface: s.name.clone(),
            found: d.len(),
            rank: s.rank(),
        });
    }
    let not_pseff = |reason: String| ZariskiError::NotPseudoEffective {
        surface: s.name.clone(),
        reason,
    };
    let mut support: Vec<usize> = Vec::new();
    // Each round strictly enlarges the support, so the loop is bounded.
    for _ in 0..=s.curves.len() {
        let classes: Vec<DivisorClass> = support.iter().map(|&i| s.curves[i].class.clone()).collect();
        let coeffs = if support.is_empty() {
            Vec::new()
        } else {
            let gram = gram_of(s, &classes);
            if !is_negative_definite(&gram) {
                return Err(not_pseff("support is not negative definite".into()));
            }
            let rhs: Vec<Rational> = classes.iter().map(|c| s.dot(d, c)).collect();
            solve(&gram, &rhs).ok_or_else(|| not_pseff("singular support Gram matrix".into()))?
        };
        if let Some((k, _)) = coeffs.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(not_pseff(format!(
                "negative coefficient on {}",
                s.curves[support[k]].name
            )));
        }
        let mut positive = d.clone();
        for (c, class) in coeffs.iter().zip(&classes) {
            positive = &positive - &class.scale(c);
        }
        let mut added = false;
        for (i, curve) in s.curves.iter().enumerate() {
            if support.contains(&i) || !s.dot(&positive, &curve.class).is_negative() {
                continue;
            }
            if curve.zero_curve {
                return Err(not_pseff(format!("negative on the nef curve {}", curve.name)));
            }
            support.push(i);
            added = true;
        }
        if !added {
            let mut negative: Vec<(usize, Rational)> = support
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&i, c)| (i, c))
                .collect();
            negative.sort_by_key(|(i, _)| *i);
            return Ok(ZariskiResult {
                positive,
                negative: negative
                    .into_iter()
                    .map(|(i, c)| (s.curves[i].name.clone(), c))
                    .collect(),
            });
        }
    }
    Err(not_pseff("support iteration did not stabilise".into()))
}

/// `true` iff `d` meets every listed curve nonnegatively.
pub fn is_nef_at(s: &SurfaceGeometry, d: &DivisorClass) -> bool {
    s.curves
        .iter()
        .all(|c| !s.dot(d, &c.class).is_negative())
}

/// Volume `P^2` of the positive part of `d`.
pub fn vol_at(s: &SurfaceGeometry, d: &DivisorClass) -> Result<Rational, ZariskiError> {
    Ok(zariski_at(s, d)?.volume(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::lattice::SurfaceCurve;

    /// Plane blown up at two points: basis h, f1, f2; cone f1, f2, h - f1 - f2.
    fn blown_up_plane() -> SurfaceGeometry {
        let c = |v: [i64; 3]| DivisorClass::new(v.iter().map(|&x| int(x)).collect());
        let curve = |n: &str, v| SurfaceCurve {
            name: n.into(),
            class: c(v),
            zero_curve: false,
        };
        SurfaceGeometry::new(
            "S",
            ["h", "f1", "f2"].map(String::from).to_vec(),
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), int(-1), int(0)],
                vec![int(0), int(0), int(-1)],
            ],
            vec![curve("f1", [0, 1, 0]), curve("f2", [0, 0, 1]), curve("l", [1, -1, -1])],
            true,
        )
        .unwrap()
    }

    #[test]
    fn decomposition_on_blown_up_plane() {
        let s = blown_up_plane();
        // D = h/2 + 3/2 (f1 + f2) has negative part 3/2 (f1 + f2).
        let d = DivisorClass::new(vec![rat(1, 2), rat(3, 2), rat(3, 2)]);
        let z = zariski_at(&s, &d).unwrap();
        assert_eq!(z.positive.coords, vec![rat(1, 2), int(0), int(0)]);
        assert_eq!(z.negative, vec![("f1".into(), rat(3, 2)), ("f2".into(), rat(3, 2))]);
        assert!(z.violations(&s).is_empty());
        let nef = DivisorClass::new(vec![rat(5, 2), int(-1), int(-1)]);
        assert!(is_nef_at(&s, &nef));
        assert_eq!(vol_at(&s, &nef).unwrap(), rat(17, 4));
        assert!(!is_nef_at(&s, &DivisorClass::new(vec![int(0), int(-1), int(0)])));
    }

    #[test]
    fn non_pseudo_effective_is_reported() {
        let s = blown_up_plane();
        let d = DivisorClass::new(vec![int(-1), int(0), int(0)]);
        assert!(matches!(zariski_at(&s, &d), Err(ZariskiError::NotPseudoEffective { .. })));
    }
}
