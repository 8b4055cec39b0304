//! Exact sign classification of a univariate polynomial on a closed interval.
//!
//! A polynomial changes sign only at roots of odd multiplicity. The odd part
//! of the square-free decomposition (Yun's algorithm) is square-free, so a
//! Sturm sequence counts its distinct roots in the open interval exactly. If
//! there are none, the sign is constant on the interior and is read off at a
//! point where the polynomial does not vanish.

use num_traits::{One, Zero};

use super::rational::{sign, Rational};
use super::unipoly::UniPoly;

/// Result of [`sign_on_interval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalSign {
    /// `p(x) >= 0` for every `x` in the interval (includes the zero polynomial).
    Nonnegative,
    /// `p(x) <= 0` for every `x` in the interval, and `p` is not identically zero.
    Nonpositive,
    /// `p` takes both signs on the interval.
    Mixed,
}

/// Classifies the sign of `p` on `[a, b]`. Requires `a <= b`.
pub fn sign_on_interval(p: &UniPoly, a: &Rational, b: &Rational) -> IntervalSign {
    assert!(a <= b, "sign_on_interval requires a <= b");
    if p.is_zero() {
        return IntervalSign::Nonnegative;
    }
    if a == b {
        return from_sign(sign(&p.eval(a)));
    }
    let mut odd = odd_part(p);
    for x in [a, b] {
        let lin = UniPoly::linear(-x.clone(), Rational::one());
        while !odd.is_zero() && odd.degree() > Some(0) && odd.eval(x).is_zero() {
            odd = odd.div_rem(&lin).0;
        }
    }
    if sturm_count_open(&odd, a, b) > 0 {
        return IntervalSign::Mixed;
    }
    let deg = p.degree().unwrap_or(0) as i64;
    let width = b - a;
    for k in 1..=deg + 1 {
        let x = a + &width * Rational::new(k.into(), (deg + 2).into());
        let s = sign(&p.eval(&x));
        if s != 0 {
            return from_sign(s);
        }
    }
    unreachable!("a nonzero polynomial of degree d has at most d roots")
}

fn from_sign(s: i32) -> IntervalSign {
    if s >= 0 {
        IntervalSign::Nonnegative
    } else {
        IntervalSign::Nonpositive
    }
}

/// Product of the square-free factors of odd multiplicity (monic).
pub fn odd_part(p: &UniPoly) -> UniPoly {
    let mut odd = UniPoly::constant(Rational::one());
    if p.degree().unwrap_or(0) == 0 {
        return odd;
    }
    let dp = p.derivative();
    let a0 = UniPoly::gcd(p, &dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut mult = 1usize;
    while b.degree().unwrap_or(0) > 0 {
        let a = UniPoly::gcd(&b, &d);
        if mult % 2 == 1 {
            odd = &odd * &a;
        }
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = &nc - &nb.derivative();
        b = nb;
        mult += 1;
    }
    odd.monic()
}

/// Sturm sequence `s0 = p, s1 = p', s_{k+1} = -rem(s_{k-1}, s_k)`.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let prev = seq.last().unwrap().clone();
        seq.push(next.clone());
        let (_, r) = prev.div_rem(&next);
        next = -r;
    }
    seq
}

fn variations(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|s| sign(&s.eval(x)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots of a square-free `p` in the open interval `(a, b)`,
/// assuming neither endpoint is a root.
fn sturm_count_open(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations(&seq, a).saturating_sub(variations(&seq, b))
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_roots(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    if p.is_zero() || p.degree() == Some(0) {
        return 0;
    }
    let g = UniPoly::gcd(p, &p.derivative());
    let sqfree = p.div_rem(&g).0;
    let mut q = sqfree.clone();
    let lin_a = UniPoly::linear(-a.clone(), Rational::one());
    let lin_b = UniPoly::linear(-b.clone(), Rational::one());
    let mut extra = 0;
    if q.eval(a).is_zero() {
        q = q.div_rem(&lin_a).0;
    }
    if q.eval(b).is_zero() {
        q = q.div_rem(&lin_b).0;
        extra = 1;
    }
    sturm_count_open(&q, a, b) + extra
}
