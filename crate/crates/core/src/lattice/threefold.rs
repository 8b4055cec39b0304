//! Threefold divisor lattices with a symmetric trilinear intersection form.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::class::{DivisorClass, PolyClass};
use super::LatticeError;
use crate::exact::{Rational, UniPoly};

/// A named curve encoded by its intersection numbers with the basis divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCurve {
    pub name: String,
    pub functional: Vec<Rational>,
}

/// Free divisor lattice with a symmetric trilinear intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldGeometry {
    pub name: String,
    pub basis: Vec<String>,
    triple: BTreeMap<[usize; 3], Rational>,
    pub anticanonical: DivisorClass,
    pub test_curves: Vec<TestCurve>,
    pub anticanonical_cube_expected: Rational,
    /// Named divisor classes (aliases such as `Q = 2H - E - F1 - F2`).
    pub classes: BTreeMap<String, DivisorClass>,
}

fn sorted(i: usize, j: usize, k: usize) -> [usize; 3] {
    let mut a = [i, j, k];
    a.sort_unstable();
    a
}

/// Distinct permutations of an index triple.
fn permutations(t: [usize; 3]) -> Vec<[usize; 3]> {
    let [a, b, c] = t;
    let mut out = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    out.sort_unstable();
    out.dedup();
    out
}

impl ThreefoldGeometry {
    /// Builds a geometry from nonzero triple entries, checking index ranges,
    /// consistency of repeated entries and the anticanonical cube.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        entries: Vec<([usize; 3], Rational)>,
        anticanonical: DivisorClass,
        test_curves: Vec<TestCurve>,
        anticanonical_cube_expected: Rational,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        let n = basis.len();
        let mut triple = BTreeMap::new();
        for (idx, val) in entries {
            if idx.iter().any(|&i| i >= n) {
                return Err(LatticeError::Dimension(format!(
                    "triple index {idx:?} out of range in {name}"
                )));
            }
            let key = sorted(idx[0], idx[1], idx[2]);
            if let Some(prev) = triple.get(&key) {
                if prev != &val {
                    return Err(LatticeError::InconsistentTriple {
                        geometry: name,
                        entry: key.map(|i| basis[i].clone()).join("*"),
                    });
                }
                continue;
            }
            if !val.is_zero() {
                triple.insert(key, val);
            }
        }
        if anticanonical.len() != n {
            return Err(LatticeError::Dimension(format!(
                "anticanonical class of {name} has {} coordinates, basis has {n}",
                anticanonical.len()
            )));
        }
        for c in &test_curves {
            if c.functional.len() != n {
                return Err(LatticeError::Dimension(format!(
                    "test curve {} of {name} has wrong length",
                    c.name
                )));
            }
        }
        let g = ThreefoldGeometry {
            name,
            basis,
            triple,
            anticanonical,
            test_curves,
            anticanonical_cube_expected,
            classes: BTreeMap::new(),
        };
        let cube = g.triple_const(&g.anticanonical, &g.anticanonical, &g.anticanonical);
        if cube != g.anticanonical_cube_expected {
            return Err(LatticeError::CubeMismatch {
                geometry: g.name.clone(),
                expected: g.anticanonical_cube_expected.clone(),
                computed: cube,
            });
        }
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// The stored triple product of basis elements `i, j, k`.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> Rational {
        self.triple
            .get(&sorted(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries with sorted indices.
    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], &Rational)> {
        self.triple.iter().map(|(k, v)| (*k, v))
    }

    /// Triple product of constant classes.
    pub fn triple_const(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Rational {
        let mut acc = Rational::zero();
        for (key, val) in &self.triple {
            for [i, j, k] in permutations(*key) {
                let t = &a.coords[i] * &b.coords[j] * &c.coords[k];
                if !t.is_zero() {
                    acc += t * val;
                }
            }
        }
        acc
    }

    /// Trilinear extension of the table to polynomial classes.
    pub fn triple_eval(
        &self,
        a: &PolyClass,
        b: &PolyClass,
        c: &PolyClass,
    ) -> Result<UniPoly, LatticeError> {
        let n = self.rank();
        if a.len() != n || b.len() != n || c.len() != n {
            return Err(LatticeError::Dimension(format!(
                "class length does not match rank {n} of {}",
                self.name
            )));
        }
        let mut acc = UniPoly::zero();
        for (key, val) in &self.triple {
            for [i, j, k] in permutations(*key) {
                if a.coords[i].is_zero() || b.coords[j].is_zero() || c.coords[k].is_zero() {
                    continue;
                }
                let t = &(&a.coords[i] * &b.coords[j]) * &c.coords[k];
                acc = &acc + &t.scale(val);
            }
        }
        Ok(acc)
    }

    /// `P^3` as a polynomial in `u`.
    pub fn volume_poly(&self, p: &PolyClass) -> Result<UniPoly, LatticeError> {
        self.triple_eval(p, p, p)
    }

    /// Returns a copy carrying the given named classes.
    pub fn with_classes(mut self, classes: BTreeMap<String, DivisorClass>) -> Self {
        self.classes = classes;
        self
    }

    pub fn with_test_curves(mut self, curves: Vec<TestCurve>) -> Self {
        self.test_curves = curves;
        self
    }

    /// Full table as a name-indexed map (sorted basis names), used to compare
    /// geometries whose bases are ordered differently.
    pub fn named_table(&self) -> BTreeMap<[String; 3], Rational> {
        let mut out = BTreeMap::new();
        for (key, val) in &self.triple {
            let mut names = key.map(|i| self.basis[i].clone());
            names.sort();
            out.insert(names, val.clone());
        }
        out
    }
}
