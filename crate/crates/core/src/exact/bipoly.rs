//! Sparse bivariate polynomials in `(u, v)` and affine functions of `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;

/// Polynomial `sum c_{ij} u^i v^j` stored sparsely; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    /// Single monomial `c u^i v^j`.
    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    /// Lifts a polynomial in `u` alone.
    pub fn from_uni(p: &UniPoly) -> Self {
        let mut out = BiPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// Adds `c u^i v^j` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * k);
        }
        out
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow(u, i) * pow(v, j);
        }
        acc
    }

    /// Substitutes `v = q(u)`, leaving a polynomial in `u`.
    pub fn substitute_v(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        let mut powers: Vec<UniPoly> = vec![UniPoly::constant(Rational::one())];
        for (&(i, j), c) in &self.terms {
            while powers.len() <= j as usize {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mono = &powers[j as usize]
                * &UniPoly::from_coeffs(
                    (0..=i)
                        .map(|k| if k == i { c.clone() } else { Rational::zero() })
                        .collect(),
                );
            acc = &acc + &mono;
        }
        acc
    }

    /// Antiderivative in `v` with zero constant of integration.
    pub fn antiderivative_v(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j + 1, c / Rational::from_integer((j + 1).into()));
        }
        out
    }

    /// `int_{lo(u)}^{hi(u)} f(u, v) dv` as a polynomial in `u`.
    pub fn integrate_v(&self, lo: &UniPoly, hi: &UniPoly) -> UniPoly {
        let f = self.antiderivative_v();
        &f.substitute_v(hi) - &f.substitute_v(lo)
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let mut mono = String::new();
            match i {
                0 => {}
                1 => mono.push('u'),
                _ => mono.push_str(&format!("u^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push('v'),
                _ => mono.push_str(&format!("v^{j}")),
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

/// Affine function `c0 + cu u + cv v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AffineUV {
    pub c0: Rational,
    pub cu: Rational,
    pub cv: Rational,
}

impl AffineUV {
    pub fn new(c0: Rational, cu: Rational, cv: Rational) -> Self {
        AffineUV { c0, cu, cv }
    }

    pub fn zero() -> Self {
        AffineUV::default()
    }

    pub fn constant(c: Rational) -> Self {
        AffineUV::new(c, Rational::zero(), Rational::zero())
    }

    /// The affine function of `u` alone given by a polynomial of degree at most one.
    pub fn from_uni(p: &UniPoly) -> Option<Self> {
        if p.degree().unwrap_or(0) > 1 {
            return None;
        }
        Some(AffineUV::new(p.coeff(0), p.coeff(1), Rational::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.cu.is_zero() && self.cv.is_zero()
    }

    /// `true` when the function does not depend on `v`.
    pub fn is_v_free(&self) -> bool {
        self.cv.is_zero()
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        &self.c0 + &self.cu * u + &self.cv * v
    }

    /// Restriction to a fixed `u`, as a polynomial in `u` when `cv = 0`.
    pub fn to_uni(&self) -> Option<UniPoly> {
        self.is_v_free()
            .then(|| UniPoly::linear(self.c0.clone(), self.cu.clone()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        AffineUV::new(&self.c0 * k, &self.cu * k, &self.cv * k)
    }

    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::constant(self.c0.clone());
        p.add_term(1, 0, self.cu.clone());
        p.add_term(0, 1, self.cv.clone());
        p
    }

    /// Substitutes `v = q(u)`.
    pub fn substitute_v(&self, q: &UniPoly) -> UniPoly {
        &UniPoly::linear(self.c0.clone(), self.cu.clone()) + &q.scale(&self.cv)
    }
}

impl fmt::Display for AffineUV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

impl Add<&AffineUV> for &AffineUV {
    type Output = AffineUV;
    fn add(self, rhs: &AffineUV) -> AffineUV {
        AffineUV::new(&self.c0 + &rhs.c0, &self.cu + &rhs.cu, &self.cv + &rhs.cv)
    }
}

impl Sub<&AffineUV> for &AffineUV {
    type Output = AffineUV;
    fn sub(self, rhs: &AffineUV) -> AffineUV {
        AffineUV::new(&self.c0 - &rhs.c0, &self.cu - &rhs.cu, &self.cv - &rhs.cv)
    }
}

impl Neg for &AffineUV {
    type Output = AffineUV;
    fn neg(self) -> AffineUV {
        AffineUV::new(-&self.c0, -&self.cu, -&self.cv)
    }
}

impl Mul<&AffineUV> for &AffineUV {
    type Output = BiPoly;
    fn mul(self, rhs: &AffineUV) -> BiPoly {
        &self.to_bipoly() * &rhs.to_bipoly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn substitution_and_integration() {
        // f = v on v in [0, u] integrates to u^2 / 2.
        let f = BiPoly::monomial(0, 1, int(1));
        let inner = f.integrate_v(&UniPoly::zero(), &UniPoly::u());
        assert_eq!(inner, UniPoly::from_coeffs(vec![int(0), int(0), Rational::new(1.into(), 2.into())]));
    }

    #[test]
    fn affine_product_expands() {
        let a = AffineUV::new(int(2), int(1), int(-1));
        let sq = &a * &a;
        assert_eq!(sq.eval(&int(1), &int(1)), int(4));
        assert_eq!(sq.to_string(), "u^2 - 2uv + v^2 + 4u - 4v + 4");
    }
}
