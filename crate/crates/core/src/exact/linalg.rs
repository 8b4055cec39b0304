//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by Gaussian elimination over Q.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves `m x = rhs` for square nonsingular `m`; `None` if singular.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Sylvester's criterion applied to `-m`: all leading principal minors of `-m` positive.
pub fn is_negative_definite(m: &Matrix) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: Matrix = (0..k)
            .map(|i| (0..k).map(|j| -&m[i][j]).collect())
            .collect();
        determinant(&minor) > Rational::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn det_and_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), int(5));
        let x = solve(&a, &[int(3), int(4)]).unwrap();
        assert_eq!(x, vec![Rational::new(1.into(), 1.into()), int(1)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]).is_none());
    }

    #[test]
    fn definiteness() {
        assert!(is_negative_definite(&m(&[&[-2, 1], &[1, -2]])));
        assert!(!is_negative_definite(&m(&[&[-1, 1], &[1, -1]])));
        assert!(is_negative_definite(&m(&[])));
    }
}
