//! Text forms used by the corpus: class expressions such as
//! `(2-u)*Q + E + F1 + F2`, triple entries such as `H*E^2 = -2`, and curve
//! functionals such as `H=1 F1=-1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::class::{AffineClass, DivisorClass, PolyClass};
use crate::exact::{parse_rational, AffineUV, BiPoly, Rational, UniPoly};

/// Error raised by the text parsers of this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("in `{input}`: {msg}")]
pub struct ExprError {
    pub input: String,
    pub msg: String,
}

fn err(input: &str, msg: impl Into<String>) -> ExprError {
    ExprError {
        input: input.to_string(),
        msg: msg.into(),
    }
}

/// A linear combination of named classes with coefficients polynomial in
/// `(u, v)`, plus a scalar part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassExpr {
    pub scalar: BiPoly,
    pub terms: BTreeMap<String, BiPoly>,
}

impl ClassExpr {
    fn scalar(p: BiPoly) -> Self {
        ClassExpr {
            scalar: p,
            terms: BTreeMap::new(),
        }
    }

    fn name(n: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(n.to_string(), BiPoly::constant(Rational::one()));
        ClassExpr {
            scalar: BiPoly::zero(),
            terms,
        }
    }

    fn is_scalar(&self) -> bool {
        self.terms.is_empty()
    }

    fn combine(&self, rhs: &ClassExpr, sign: &Rational) -> ClassExpr {
        let mut out = self.clone();
        out.scalar = &out.scalar + &rhs.scalar.scale(sign);
        for (n, c) in &rhs.terms {
            let e = out.terms.entry(n.clone()).or_insert_with(BiPoly::zero);
            *e = &*e + &c.scale(sign);
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn times_scalar(&self, k: &BiPoly) -> ClassExpr {
        let mut out = ClassExpr::scalar(&self.scalar * k);
        for (n, c) in &self.terms {
            let p = c * k;
            if !p.is_zero() {
                out.terms.insert(n.clone(), p);
            }
        }
        out
    }

    /// Resolves names and returns coordinates with `BiPoly` coefficients.
    fn resolve(
        &self,
        input: &str,
        basis: &[String],
        named: &BTreeMap<String, DivisorClass>,
    ) -> Result<Vec<BiPoly>, ExprError> {
        if !self.scalar.is_zero() {
            return Err(err(input, "a class expression cannot have a scalar summand"));
        }
        let mut coords = vec![BiPoly::zero(); basis.len()];
        for (n, c) in &self.terms {
            if let Some(i) = basis.iter().position(|b| b == n) {
                coords[i] = &coords[i] + c;
            } else if let Some(class) = named.get(n) {
                if class.len() != basis.len() {
                    return Err(err(input, format!("class `{n}` has wrong dimension")));
                }
                for (i, k) in class.coords.iter().enumerate() {
                    coords[i] = &coords[i] + &c.scale(k);
                }
            } else {
                return Err(err(input, format!("unknown class `{n}`")));
            }
        }
        Ok(coords)
    }

    /// Constant class; every coefficient must be a number.
    pub fn to_divisor_class(
        &self,
        input: &str,
        basis: &[String],
        named: &BTreeMap<String, DivisorClass>,
    ) -> Result<DivisorClass, ExprError> {
        self.resolve(input, basis, named)?
            .iter()
            .map(|p| bi_to_const(p).ok_or_else(|| err(input, "coefficient must be constant")))
            .collect::<Result<Vec<_>, _>>()
            .map(DivisorClass::new)
    }

    /// Class with coefficients polynomial in `u` (no `v`).
    pub fn to_poly_class(
        &self,
        input: &str,
        basis: &[String],
        named: &BTreeMap<String, DivisorClass>,
    ) -> Result<PolyClass, ExprError> {
        self.resolve(input, basis, named)?
            .iter()
            .map(|p| bi_to_uni(p).ok_or_else(|| err(input, "coefficient depends on v")))
            .collect::<Result<Vec<_>, _>>()
            .map(PolyClass::new)
    }

    /// Class with coefficients affine in `(u, v)`.
    pub fn to_affine_class(
        &self,
        input: &str,
        basis: &[String],
        named: &BTreeMap<String, DivisorClass>,
    ) -> Result<AffineClass, ExprError> {
        self.resolve(input, basis, named)?
            .iter()
            .map(|p| bi_to_affine(p).ok_or_else(|| err(input, "coefficient is not affine in u, v")))
            .collect::<Result<Vec<_>, _>>()
            .map(AffineClass::new)
    }
}

/// Converts a constant `BiPoly`.
pub fn bi_to_const(p: &BiPoly) -> Option<Rational> {
    if p.terms().keys().any(|&(i, j)| i > 0 || j > 0) {
        return None;
    }
    Some(p.coeff(0, 0))
}

/// Converts a `v`-free `BiPoly` to a polynomial in `u`.
pub fn bi_to_uni(p: &BiPoly) -> Option<UniPoly> {
    if p.terms().keys().any(|&(_, j)| j > 0) {
        return None;
    }
    let deg = p.terms().keys().map(|&(i, _)| i as usize).max().unwrap_or(0);
    Some(UniPoly::from_coeffs((0..=deg).map(|i| p.coeff(i as u32, 0)).collect()))
}

/// Converts a `BiPoly` of total degree at most one.
pub fn bi_to_affine(p: &BiPoly) -> Option<AffineUV> {
    if p.terms().keys().any(|&(i, j)| i + j > 1) {
        return None;
    }
    Some(AffineUV::new(p.coeff(0, 0), p.coeff(1, 0), p.coeff(0, 1)))
}

/// Parses a class expression.
pub fn parse_class_expr(input: &str) -> Result<ClassExpr, ExprError> {
    let mut p = Parser {
        s: input.as_bytes(),
        input,
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a scalar expression in `u` and `v`, such as `2 - u` or `(u-1)^2/2`.
pub fn parse_scalar(input: &str) -> Result<BiPoly, ExprError> {
    let e = parse_class_expr(input)?;
    if !e.is_scalar() {
        return Err(err(input, "expected a scalar expression"));
    }
    Ok(e.scalar)
}

/// Parses a polynomial in `u`.
pub fn parse_upoly(input: &str) -> Result<UniPoly, ExprError> {
    bi_to_uni(&parse_scalar(input)?).ok_or_else(|| err(input, "expected a polynomial in u"))
}

/// Parses an affine function of `(u, v)`.
pub fn parse_affine(input: &str) -> Result<AffineUV, ExprError> {
    bi_to_affine(&parse_scalar(input)?).ok_or_else(|| err(input, "expected an affine function"))
}

/// Parses a triple entry `A*B*C = q`, `A^2*B = q` or `A^3 = q`.
pub fn parse_triple_entry(input: &str) -> Result<([String; 3], Rational), ExprError> {
    let (lhs, rhs) = input
        .split_once('=')
        .ok_or_else(|| err(input, "expected `=`"))?;
    let value = parse_rational(rhs.trim()).map_err(|e| err(input, e.to_string()))?;
    let mut names = Vec::new();
    for factor in lhs.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, k)) => (
                n.trim(),
                k.trim()
                    .parse::<usize>()
                    .map_err(|_| err(input, "bad exponent"))?,
            ),
            None => (factor, 1),
        };
        if !is_ident(name) {
            return Err(err(input, format!("bad divisor name `{name}`")));
        }
        names.extend(std::iter::repeat_n(name.to_string(), exp));
    }
    let names: [String; 3] = names
        .try_into()
        .map_err(|_| err(input, "a triple entry needs exactly three factors"))?;
    Ok((names, value))
}

/// Parses a Gram entry `a*b = q` or `a^2 = q`.
pub fn parse_gram_entry(input: &str) -> Result<([String; 2], Rational), ExprError> {
    let (lhs, rhs) = input
        .split_once('=')
        .ok_or_else(|| err(input, "expected `=`"))?;
    let value = parse_rational(rhs.trim()).map_err(|e| err(input, e.to_string()))?;
    let lhs = lhs.trim();
    let names: Vec<&str> = match lhs.split_once('^') {
        Some((n, "2")) => vec![n.trim(), n.trim()],
        Some(_) => return Err(err(input, "only squares are allowed")),
        None => lhs.split('*').map(str::trim).collect(),
    };
    if names.len() != 2 || names.iter().any(|n| !is_ident(n)) {
        return Err(err(input, "a Gram entry needs exactly two factors"));
    }
    Ok(([names[0].to_string(), names[1].to_string()], value))
}

/// Parses a functional `H=1 E=-1` into `(name, value)` pairs.
pub fn parse_functional(input: &str) -> Result<Vec<(String, Rational)>, ExprError> {
    let mut out: Vec<(String, Rational)> = Vec::new();
    for item in input.split_whitespace() {
        let (name, val) = item
            .split_once('=')
            .ok_or_else(|| err(input, format!("expected `name=value`, got `{item}`")))?;
        if !is_ident(name) {
            return Err(err(input, format!("bad name `{name}`")));
        }
        if out.iter().any(|(n, _)| n == name) {
            return Err(err(input, format!("`{name}` given twice")));
        }
        let q = parse_rational(val).map_err(|e| err(input, e.to_string()))?;
        out.push((name.to_string(), q));
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    s: &'a [u8],
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExprError {
        err(self.input, format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ClassExpr, ExprError> {
        let one = Rational::one();
        let minus = -Rational::one();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                ClassExpr::default().combine(&self.term()?, &minus)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.combine(&self.term()?, &one);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.combine(&self.term()?, &minus);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn multiply(&self, a: ClassExpr, b: ClassExpr) -> Result<ClassExpr, ExprError> {
        if a.is_scalar() {
            Ok(b.times_scalar(&a.scalar))
        } else if b.is_scalar() {
            Ok(a.times_scalar(&b.scalar))
        } else {
            Err(self.err("product of two classes"))
        }
    }

    fn term(&mut self) -> Result<ClassExpr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.multiply(acc, f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let d = f
                        .is_scalar()
                        .then(|| bi_to_const(&f.scalar))
                        .flatten()
                        .filter(|d| !d.is_zero())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.times_scalar(&BiPoly::constant(d.recip()));
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' => {
                    let f = self.factor()?;
                    acc = self.multiply(acc, f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ClassExpr, ExprError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = self.input[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            if !base.is_scalar() {
                return Err(self.err("power of a class"));
            }
            let mut acc = BiPoly::constant(Rational::one());
            for _ in 0..k {
                acc = &acc * &base.scalar;
            }
            return Ok(ClassExpr::scalar(acc));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ClassExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let q = parse_rational(&self.input[start..self.pos])
                    .map_err(|_| self.err("bad number"))?;
                Ok(ClassExpr::scalar(BiPoly::constant(q)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                match &self.input[start..self.pos] {
                    "u" => Ok(ClassExpr::scalar(BiPoly::monomial(1, 0, Rational::one()))),
                    "v" => Ok(ClassExpr::scalar(BiPoly::monomial(0, 1, Rational::one()))),
                    name => Ok(ClassExpr::name(name)),
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
