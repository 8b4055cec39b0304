//! Exact definite integration over intervals and over chambers bounded by affine curves.

use thiserror::Error;

use super::bipoly::{AffineUV, BiPoly};
use super::rational::Rational;
use super::unipoly::UniPoly;

/// Exact `int_a^b p(u) du`.
pub fn integrate_uni(p: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let f = p.antiderivative();
    f.eval(b) - f.eval(a)
}

/// Errors raised when constructing a [`Chamber2D`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChamberError {
    #[error("chamber interval [{0}, {1}] is empty")]
    EmptyInterval(Rational, Rational),
    #[error("chamber bound `{0}` depends on v")]
    BoundDependsOnV(AffineUV),
    #[error("lower bound exceeds upper bound at u = {0}")]
    Inverted(Rational),
}

/// Region `u_lo <= u <= u_hi`, `v_lo(u) <= v <= v_hi(u)` with affine bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber2D {
    u_lo: Rational,
    u_hi: Rational,
    v_lo: AffineUV,
    v_hi: AffineUV,
}

impl Chamber2D {
    /// Validates `u_lo < u_hi`, `v`-free bounds and `v_lo <= v_hi` at both ends.
    pub fn new(
        u_lo: Rational,
        u_hi: Rational,
        v_lo: AffineUV,
        v_hi: AffineUV,
    ) -> Result<Self, ChamberError> {
        if u_lo >= u_hi {
            return Err(ChamberError::EmptyInterval(u_lo, u_hi));
        }
        for b in [&v_lo, &v_hi] {
            if !b.is_v_free() {
                return Err(ChamberError::BoundDependsOnV(b.clone()));
            }
        }
        let zero = Rational::from_integer(0.into());
        for u in [&u_lo, &u_hi] {
            if v_lo.eval(u, &zero) > v_hi.eval(u, &zero) {
                return Err(ChamberError::Inverted(u.clone()));
            }
        }
        Ok(Chamber2D {
            u_lo,
            u_hi,
            v_lo,
            v_hi,
        })
    }

    pub fn u_lo(&self) -> &Rational {
        &self.u_lo
    }
    pub fn u_hi(&self) -> &Rational {
        &self.u_hi
    }
    pub fn v_lo(&self) -> &AffineUV {
        &self.v_lo
    }
    pub fn v_hi(&self) -> &AffineUV {
        &self.v_hi
    }

    /// The (up to four) corner points `(u, v)` of the chamber.
    pub fn vertices(&self) -> Vec<(Rational, Rational)> {
        let zero = Rational::from_integer(0.into());
        let mut out = Vec::with_capacity(4);
        for u in [&self.u_lo, &self.u_hi] {
            for b in [&self.v_lo, &self.v_hi] {
                let p = (u.clone(), b.eval(u, &zero));
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Exact `int_{u_lo}^{u_hi} int_{v_lo(u)}^{v_hi(u)} f(u, v) dv du`.
pub fn integrate_chamber(f: &BiPoly, ch: &Chamber2D) -> Rational {
    let lo = ch.v_lo.to_uni().expect("validated v-free bound");
    let hi = ch.v_hi.to_uni().expect("validated v-free bound");
    let inner = f.integrate_v(&lo, &hi);
    integrate_uni(&inner, &ch.u_lo, &ch.u_hi)
}
