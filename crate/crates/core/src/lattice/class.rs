//! Divisor classes with constant, polynomial (threefold) or affine (surface) coordinates.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::exact::{AffineUV, Rational, UniPoly};

/// A divisor class with rational coordinates over a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DivisorClass {
    pub coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        DivisorClass { coords }
    }

    pub fn zero(n: usize) -> Self {
        DivisorClass {
            coords: vec![Rational::zero(); n],
        }
    }

    /// The `i`-th basis vector of an `n`-dimensional lattice.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.coords[i] = Rational::from_integer(1.into());
        c
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        DivisorClass::new(self.coords.iter().map(|c| c * k).collect())
    }

    /// Plain dot product with a functional (e.g. a curve's intersection vector).
    pub fn dot(&self, functional: &[Rational]) -> Rational {
        self.coords
            .iter()
            .zip(functional)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Constant polynomial class.
    pub fn to_poly(&self) -> PolyClass {
        PolyClass::new(self.coords.iter().cloned().map(UniPoly::constant).collect())
    }

    /// Constant affine class.
    pub fn to_affine(&self) -> AffineClass {
        AffineClass::new(self.coords.iter().cloned().map(AffineUV::constant).collect())
    }

    /// Renders the class as `2H - E - F1` over the given basis names.
    pub fn render(&self, basis: &[String]) -> String {
        let terms: Vec<(String, String)> = self
            .coords
            .iter()
            .zip(basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| (c.to_string(), n.clone()))
            .collect();
        render_terms(&terms)
    }
}

/// Joins `(coefficient, name)` pairs into `a*X + b*Y` form.
pub(crate) fn render_terms(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (c, name)) in terms.iter().enumerate() {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) if !c.contains(' ') => (true, m.to_string()),
            _ => (false, c.clone()),
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag == "1" {
            out.push_str(name);
        } else if mag.contains(' ') {
            out.push_str(&format!("({mag})*{name}"));
        } else {
            out.push_str(&format!("{mag}*{name}"));
        }
    }
    out
}

impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

/// A class whose coordinates are polynomials in `u` (threefold level).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyClass {
    pub coords: Vec<UniPoly>,
}

impl PolyClass {
    pub fn new(coords: Vec<UniPoly>) -> Self {
        PolyClass { coords }
    }

    pub fn zero(n: usize) -> Self {
        PolyClass {
            coords: vec![UniPoly::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(UniPoly::is_zero)
    }

    /// Specialisation at `u = x`.
    pub fn eval(&self, x: &Rational) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|p| p.eval(x)).collect())
    }

    /// Multiplies by a polynomial coefficient.
    pub fn mul_poly(&self, k: &UniPoly) -> Self {
        PolyClass::new(self.coords.iter().map(|p| p * k).collect())
    }

    /// Product of a constant class by a polynomial coefficient.
    pub fn from_scaled(class: &DivisorClass, k: &UniPoly) -> Self {
        PolyClass::new(class.coords.iter().map(|c| k.scale(c)).collect())
    }

    /// Dot product with a rational functional, giving a polynomial in `u`.
    pub fn dot(&self, functional: &[Rational]) -> UniPoly {
        self.coords
            .iter()
            .zip(functional)
            .fold(UniPoly::zero(), |acc, (p, f)| &acc + &p.scale(f))
    }

    /// Maximum coordinate degree (zero class counts as degree 0).
    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn render(&self, basis: &[String]) -> String {
        let terms: Vec<(String, String)> = self
            .coords
            .iter()
            .zip(basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| (c.to_string(), n.clone()))
            .collect();
        render_terms(&terms)
    }
}

impl Add<&PolyClass> for &PolyClass {
    type Output = PolyClass;
    fn add(self, rhs: &PolyClass) -> PolyClass {
        PolyClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&PolyClass> for &PolyClass {
    type Output = PolyClass;
    fn sub(self, rhs: &PolyClass) -> PolyClass {
        PolyClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

/// A surface class whose coordinates are affine functions of `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AffineClass {
    pub coords: Vec<AffineUV>,
}

impl AffineClass {
    pub fn new(coords: Vec<AffineUV>) -> Self {
        AffineClass { coords }
    }

    pub fn zero(n: usize) -> Self {
        AffineClass {
            coords: vec![AffineUV::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|a| a.eval(u, v)).collect())
    }

    /// Builds `c * class` for an affine coefficient `c`.
    pub fn from_scaled(class: &DivisorClass, k: &AffineUV) -> Self {
        AffineClass::new(class.coords.iter().map(|c| k.scale(c)).collect())
    }

    /// Converts a polynomial class of degree at most one.
    pub fn from_poly(p: &PolyClass) -> Option<Self> {
        p.coords
            .iter()
            .map(AffineUV::from_uni)
            .collect::<Option<Vec<_>>>()
            .map(AffineClass::new)
    }

    /// Sets `v = t(u)`, giving a polynomial class (requires affine `t`).
    pub fn at_v(&self, t: &UniPoly) -> PolyClass {
        PolyClass::new(self.coords.iter().map(|a| a.substitute_v(t)).collect())
    }

    pub fn render(&self, basis: &[String]) -> String {
        let terms: Vec<(String, String)> = self
            .coords
            .iter()
            .zip(basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| (c.to_string(), n.clone()))
            .collect();
        render_terms(&terms)
    }
}

impl Add<&AffineClass> for &AffineClass {
    type Output = AffineClass;
    fn add(self, rhs: &AffineClass) -> AffineClass {
        AffineClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&AffineClass> for &AffineClass {
    type Output = AffineClass;
    fn sub(self, rhs: &AffineClass) -> AffineClass {
        AffineClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}
