//! Decomposition of a class as a nonnegative integer combination of generators.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::class::DivisorClass;
use crate::exact::Rational;

/// Per-generator coefficient bound: the sum of the absolute values of the
/// target coordinates, rounded up, and at least one.
fn coefficient_bound(target: &DivisorClass) -> u64 {
    let total = target
        .coords
        .iter()
        .fold(Rational::zero(), |acc, c| acc + c.abs());
    let ceil: BigInt = total.ceil().to_integer();
    ceil.to_u64().unwrap_or(u64::MAX).max(1)
}

/// Finds nonnegative integers `c` with `sum c_i G_i = target`, enumerating
/// coefficient vectors in lexicographic order within [`coefficient_bound`].
/// Returns the first solution found, or `None`.
pub fn monoid_decompose(target: &DivisorClass, generators: &[DivisorClass]) -> Option<Vec<u64>> {
    if generators.iter().any(|g| g.len() != target.len()) {
        return None;
    }
    if target.is_zero() {
        return Some(vec![0; generators.len()]);
    }
    let bound = coefficient_bound(target);
    let mut coeffs = vec![0u64; generators.len()];
    search(target, generators, bound, 0, &mut coeffs, &DivisorClass::zero(target.len()))
        .then_some(coeffs)
}

fn search(
    target: &DivisorClass,
    gens: &[DivisorClass],
    bound: u64,
    pos: usize,
    coeffs: &mut [u64],
    partial: &DivisorClass,
) -> bool {
    if pos == gens.len() {
        return partial == target;
    }
    let mut acc = partial.clone();
    for c in 0..=bound {
        coeffs[pos] = c;
        if search(target, gens, bound, pos + 1, coeffs, &acc) {
            return true;
        }
        acc = &acc + &gens[pos];
    }
    coeffs[pos] = 0;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn c(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn anticanonical_of_x_tilde() {
        // Basis H, E, F1, F2.
        let q = c(&[2, -1, -1, -1]);
        let hc = c(&[1, -1, 0, 0]);
        let e = c(&[0, 1, 0, 0]);
        let k = c(&[4, -1, -1, -1]);
        assert_eq!(monoid_decompose(&k, &[q.clone(), hc.clone(), e.clone()]), Some(vec![1, 2, 2]));
        assert_eq!(monoid_decompose(&q, &[q.clone(), hc.clone(), e.clone()]), Some(vec![1, 0, 0]));
        assert_eq!(monoid_decompose(&c(&[1, -5, 0, 0]), &[q, hc, e]), None);
    }
}
