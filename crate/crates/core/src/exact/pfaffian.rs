//! Pfaffians of 5x5 skew-symmetric polynomial matrices and the smoothing
//! family `X_{a,b}` cut out by them.
//!
//! # Labelling convention
//!
//! For a 4x4 skew block `m` the Pfaffian is `m12 m34 - m13 m24 + m14 m23`.
//! Writing `pf(i)` for the Pfaffian of the principal block obtained by
//! deleting row and column `i` (1-based), the labelled Pfaffians are
//!
//! | label | definition        |
//! |-------|-------------------|
//! | Pf1   | `pf(3)`           |
//! | Pf2   | `pf(1)`           |
//! | Pf3   | `pf(2)`           |
//! | Pf4   | `-1/2 * pf(5)`    |
//! | Pf5   | `-1/2 * pf(4)`    |
//!
//! This is the unique choice of deleted index and scalar under which the
//! published generators of the smoothing family are reproduced; rescaling a
//! generator does not change the ideal.

use num_traits::Zero;
use thiserror::Error;

use super::multipoly::{poly_identity, MultiPoly};
use super::rational::{rat, Rational};

/// A 5x5 matrix of polynomials.
pub type Matrix5 = [[MultiPoly; 5]; 5];

/// Rejection reasons for [`pfaffians_5`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfaffianError {
    #[error("matrix is not skew-symmetric at entry ({0}, {1})")]
    NotSkew(usize, usize),
}

/// Deleted index (1-based) and scalar for each labelled Pfaffian.
pub const LABEL_CONVENTION: [(usize, (i64, i64)); 5] =
    [(3, (1, 1)), (1, (1, 1)), (2, (1, 1)), (5, (-1, 2)), (4, (-1, 2))];

/// Checks `m[i][j] = -m[j][i]` and a zero diagonal; returns the first offending
/// entry (1-based).
pub fn check_skew(m: &Matrix5) -> Result<(), PfaffianError> {
    for i in 0..5 {
        for j in i..5 {
            if !poly_identity(&m[i][j], &-&m[j][i]) {
                return Err(PfaffianError::NotSkew(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Pfaffian of the 4x4 principal block on the given (0-based) indices.
fn pf4(m: &Matrix5, idx: [usize; 4]) -> MultiPoly {
    let e = |a: usize, b: usize| &m[idx[a]][idx[b]];
    let t1 = e(0, 1) * e(2, 3);
    let t2 = e(0, 2) * e(1, 3);
    let t3 = e(0, 3) * e(1, 2);
    &(&t1 - &t2) + &t3
}

/// Pfaffian of the principal 4x4 block with row/column `i` (1-based) removed.
pub fn principal_pfaffian(m: &Matrix5, i: usize) -> MultiPoly {
    let keep: Vec<usize> = (0..5).filter(|&k| k + 1 != i).collect();
    pf4(m, [keep[0], keep[1], keep[2], keep[3]])
}

/// The five labelled 4x4 Pfaffians `Pf1..Pf5` (see the module docs).
pub fn pfaffians_5(m: &Matrix5) -> Result<[MultiPoly; 5], PfaffianError> {
    check_skew(m)?;
    Ok(LABEL_CONVENTION.map(|(i, (n, d))| principal_pfaffian(m, i).scale(&rat(n, d))))
}

fn parse(s: &str) -> MultiPoly {
    MultiPoly::parse(s).expect("built-in polynomial literal")
}

fn matrix_from_upper(upper: [[&str; 5]; 5], lower_row5: Option<[&str; 5]>) -> Matrix5 {
    let mut m: Matrix5 = Default::default();
    for i in 0..5 {
        for j in 0..5 {
            m[i][j] = if i == j {
                MultiPoly::zero()
            } else if i < j {
                parse(upper[i][j])
            } else {
                -parse(upper[j][i])
            };
        }
    }
    if let Some(row) = lower_row5 {
        for (j, s) in row.iter().enumerate() {
            m[4][j] = parse(s);
        }
    }
    m
}

const UPPER: [[&str; 5]; 5] = [
    ["0", "-2x1y1-x2y3-x3y2", "2x1z1-x2z3-x3z2", "b x3", "x2"],
    ["", "0", "-2y1z1-y2z3-y3z2", "b y3", "y2"],
    ["", "", "0", "b z3", "z2"],
    ["", "", "", "0", "a"],
    ["", "", "", "", "0"],
];

/// The matrix exactly as printed, including its fifth row `(-x2, -x2, -z2, -a, 0)`.
/// It fails the skew-symmetry check at entry (2, 5).
pub fn printed_smoothing_matrix() -> Matrix5 {
    matrix_from_upper(UPPER, Some(["-x2", "-x2", "-z2", "-a", "0"]))
}

/// The skew-symmetric matrix defining `X_{a,b}` (fifth row `(-x2, -y2, -z2, -a, 0)`).
pub fn smoothing_matrix() -> Matrix5 {
    matrix_from_upper(UPPER, None)
}

/// The published generators `Pf1..Pf5` of the smoothing family.
pub fn published_pfaffians() -> [MultiPoly; 5] {
    [
        "(b-a)x2y3-(b+a)x3y2-2a x1y1",
        "(b-a)y2z3-(b+a)y3z2-2a y1z1",
        "(b-a)x2z3-(b+a)x3z2+2a x1z1",
        "b x1y1z3+b x1y3z1+b x3y1z1+b x3y2z3",
        "x1y1z2+x1y2z1+x2y1z1+x2y3z2",
    ]
    .map(parse)
}

/// The five equations of the non-toric limit, as printed.
pub const NON_TORIC_EQUATIONS: [&str; 5] = [
    "x2y3-x3y2",
    "y2z3-y3z2",
    "x2z3-x3z2",
    "x1y1z3+x1y3z1+x3y1z1+x3y2z3",
    "x1y1z2+x1y2z1+x2y1z1+x2y3z2",
];

/// Specialises `a = 0, b = 1`.
pub fn specialize_non_toric(p: &MultiPoly) -> MultiPoly {
    p.substitute(&[(9, Rational::zero()), (10, Rational::from_integer(1.into()))])
}

/// One summand `sign * var * Pf_k` of an ideal relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelationTerm {
    pub sign: i8,
    /// Variable index into [`super::multipoly::VAR_NAMES`].
    pub var: usize,
    /// Pfaffian label 1..=5.
    pub pf: usize,
}

/// Relation `2a * Pf_lhs = outer * (sum of terms)`, where `outer` is a polynomial
/// factor (`-1` or `-b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: usize,
    pub outer: MultiPoly,
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    /// Evaluates `2a Pf_lhs - outer * sum` against the given Pfaffians.
    pub fn residual(&self, pfs: &[MultiPoly; 5]) -> MultiPoly {
        let lhs = &parse("2a") * &pfs[self.lhs - 1];
        let mut sum = MultiPoly::zero();
        for t in &self.terms {
            let term = &MultiPoly::var(t.var) * &pfs[t.pf - 1];
            sum = if t.sign > 0 { &sum + &term } else { &sum - &term };
        }
        &lhs - &(&self.outer * &sum)
    }

    pub fn holds(&self, pfs: &[MultiPoly; 5]) -> bool {
        self.residual(pfs).is_zero()
    }

    /// Human-readable form, e.g. `2a*Pf5 = -(z2*Pf1 - y2*Pf3 + x2*Pf2)`.
    pub fn render(&self) -> String {
        let mut inner = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let name = super::multipoly::VAR_NAMES[t.var];
            let s = match (n, t.sign > 0) {
                (0, true) => String::new(),
                (0, false) => "-".into(),
                (_, true) => " + ".into(),
                (_, false) => " - ".into(),
            };
            inner.push_str(&format!("{s}{name}*Pf{}", t.pf));
        }
        let outer = self.outer.to_string();
        let prefix = match outer.as_str() {
            "-1" => "-".to_string(),
            o => format!("{o}*"),
        };
        format!("2a*Pf{} = {prefix}({inner})", self.lhs)
    }
}

fn term(sign: i8, var: &str, pf: usize) -> RelationTerm {
    RelationTerm {
        sign,
        var: super::multipoly::var_index(var).expect("known variable"),
        pf,
    }
}

/// `2a Pf4 = -b(z2 Pf1 - y3 Pf3 + z3 Pf1)` as printed.
pub fn printed_relation_pf4() -> Relation {
    Relation {
        lhs: 4,
        outer: parse("-b"),
        terms: vec![term(1, "z2", 1), term(-1, "y3", 3), term(1, "z3", 1)],
    }
}

/// `2a Pf5 = -(z2 Pf1 - y2 Pf3 + x2 Pf2)` as printed.
pub fn printed_relation_pf5() -> Relation {
    Relation {
        lhs: 5,
        outer: parse("-1"),
        terms: vec![term(1, "z2", 1), term(-1, "y2", 3), term(1, "x2", 2)],
    }
}

/// All relations obtained from `rel` by replacing exactly one summand with
/// another choice of sign, coordinate variable (`x1..z3`) and Pfaffian among
/// `Pf1..Pf3`, that hold identically. Deterministic order.
pub fn single_term_variants(rel: &Relation, pfs: &[MultiPoly; 5]) -> Vec<Relation> {
    let mut found = Vec::new();
    for pos in 0..rel.terms.len() {
        for pf in 1..=3 {
            for var in 0..9 {
                for sign in [1i8, -1] {
                    let cand = RelationTerm { sign, var, pf };
                    if cand == rel.terms[pos] {
                        continue;
                    }
                    let mut r = rel.clone();
                    r.terms[pos] = cand;
                    if r.holds(pfs) {
                        found.push(r);
                    }
                }
            }
        }
    }
    found
}
