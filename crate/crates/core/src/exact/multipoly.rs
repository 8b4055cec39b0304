//! Sparse multivariate polynomials in the coordinates `x1..x3, y1..y3, z1..z3`
//! and the parameters `a, b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::rational::{parse_rational, Rational};

/// Number of variables.
pub const NVARS: usize = 11;

/// Variable names in index order.
pub const VAR_NAMES: [&str; NVARS] = [
    "x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3", "a", "b",
];

/// Exponent vector of a monomial.
pub type Monomial = [u16; NVARS];

/// Index of a named variable.
pub fn var_index(name: &str) -> Option<usize> {
    VAR_NAMES.iter().position(|&n| n == name)
}

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Error raised by [`MultiPoly::parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial `{input}` at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    /// The variable with the given index.
    pub fn var(i: usize) -> Self {
        let mut m = [0; NVARS];
        m[i] = 1;
        let mut p = MultiPoly::zero();
        p.add_term(m, Rational::one());
        p
    }

    /// The named variable; panics on an unknown name.
    pub fn named(name: &str) -> Self {
        Self::var(var_index(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates every variable at the given point.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces the listed variables by rational values, keeping the others symbolic.
    pub fn substitute(&self, values: &[(usize, Rational)]) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut t = c.clone();
            for (i, val) in values {
                for _ in 0..mm[*i] {
                    t *= val;
                }
                mm[*i] = 0;
            }
            out.add_term(mm, t);
        }
        out
    }

    /// Parses expressions such as `(b-a)x2y3 - 2a*x1y1 + 1/2 z3^2`.
    pub fn parse(input: &str) -> Result<Self, PolyParseError> {
        let mut p = Parser {
            s: input.as_bytes(),
            input,
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError {
            input: self.input.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
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
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyParseError> {
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
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MultiPoly, PolyParseError> {
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
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let q = parse_rational(&self.input[start..self.pos])
                    .map_err(|_| self.err("bad number"))?;
                Ok(MultiPoly::constant(q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                if matches!(c, b'x' | b'y' | b'z')
                    && self.pos < self.s.len()
                    && self.s[self.pos].is_ascii_digit()
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                let i = var_index(name).ok_or_else(|| self.err("unknown variable"))?;
                Ok(MultiPoly::var(i))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Monomials in descending lexicographic order of exponent vectors, variables
    /// juxtaposed (`x2y3 - x3y2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut mono = String::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push_str(VAR_NAMES[i]),
                    _ => mono.push_str(&format!("{}^{}", VAR_NAMES[i], e)),
                }
            }
            let mag = c.abs();
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

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &rhs.terms {
                let mut m = *m1;
                for i in 0..NVARS {
                    m[i] += m2[i];
                }
                out.add_term(m, a * b);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// `true` iff `lhs - rhs` expands to the zero polynomial.
pub fn poly_identity(lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
    (lhs - rhs).is_zero()
}
