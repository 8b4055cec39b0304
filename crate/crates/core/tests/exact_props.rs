//! Property tests for the exact arithmetic layer. Each property compares the
//! library against an oracle computed independently inside the test.

use kstab_core::exact::linalg::{determinant, solve, Matrix};
use kstab_core::exact::pfaffian::{principal_pfaffian, Matrix5};
use kstab_core::exact::sturm::count_roots;
use kstab_core::exact::{
    integrate_chamber, integrate_uni, int, rat, sign_on_interval, AffineUV, BiPoly, Chamber2D,
    IntervalSign, MultiPoly, Rational, UniPoly,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec(small_rat(), 0..=max_len).prop_map(UniPoly::from_coeffs)
}

/// Simpson's rule, exact for polynomials of degree at most three.
fn simpson(f: impl Fn(&Rational) -> Rational, a: &Rational, b: &Rational) -> Rational {
    let m = (a + b) / int(2);
    (b - a) / int(6) * (f(a) + f(&m) * int(4) + f(b))
}

/// Closed Newton-Cotes rule on `n + 1` equally spaced nodes, exact for
/// polynomials of degree at most `n`. The weights solve the moment equations
/// of the monomials on `[0, n]`.
fn newton_cotes(f: impl Fn(&Rational) -> Rational, a: &Rational, b: &Rational, n: usize) -> Rational {
    let nodes: Vec<Rational> = (0..=n).map(|j| int(j as i64)).collect();
    let vander: Matrix = (0..=n)
        .map(|k| nodes.iter().map(|x| pow(x, k)).collect())
        .collect();
    let moments: Vec<Rational> = (0..=n)
        .map(|k| pow(&int(n as i64), k + 1) / int(k as i64 + 1))
        .collect();
    let w = solve(&vander, &moments).expect("Vandermonde matrix is invertible");
    let h = (b - a) / int(n as i64);
    let total = nodes
        .iter()
        .zip(&w)
        .fold(Rational::zero(), |acc, (x, wj)| acc + wj * f(&(a + &h * x)));
    total * h
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

proptest! {
    #[test]
    fn integrate_matches_simpson_on_cubics(p in poly(4), a in small_rat(), w in 1i64..=8) {
        let b = &a + rat(w, 3);
        prop_assert_eq!(integrate_uni(&p, &a, &b), simpson(|x| p.eval(x), &a, &b));
    }

    #[test]
    fn integrate_matches_newton_cotes(p in poly(8), a in small_rat(), w in 1i64..=8) {
        let b = &a + rat(w, 2);
        let n = p.degree().unwrap_or(0).max(1);
        prop_assert_eq!(integrate_uni(&p, &a, &b), newton_cotes(|x| p.eval(x), &a, &b, n));
    }

    #[test]
    fn integrate_is_additive(p in poly(7), a in small_rat(), c in small_rat(), b in small_rat()) {
        let whole = integrate_uni(&p, &a, &b);
        prop_assert_eq!(whole, integrate_uni(&p, &a, &c) + integrate_uni(&p, &c, &b));
    }

    #[test]
    fn chamber_integral_matches_iterated_quadrature(
        coeffs in proptest::collection::vec(small_rat(), 16),
        u_lo in small_rat(),
        width in 1i64..=6,
        lo0 in small_rat(), lo1 in small_rat(),
        gap0 in small_rat(), gap1 in small_rat(),
    ) {
        // f has degree at most three in each variable.
        let mut f = BiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            f.add_term((k / 4) as u32, (k % 4) as u32, c.clone());
        }
        let u_hi = &u_lo + rat(width, 2);
        let gap0 = gap0.abs();
        let gap1 = gap1.abs();
        // v_hi - v_lo is affine in u and nonnegative at both ends.
        let v_lo = AffineUV::new(lo0.clone(), lo1.clone(), Rational::zero());
        let slope = (&gap1 - &gap0) / (&u_hi - &u_lo);
        let g0 = &gap0 - &slope * &u_lo;
        let v_hi = AffineUV::new(&lo0 + &g0, &lo1 + &slope, Rational::zero());
        let ch = Chamber2D::new(u_lo.clone(), u_hi.clone(), v_lo.clone(), v_hi.clone()).unwrap();
        let zero = Rational::zero();
        let inner = |u: &Rational| {
            let a = v_lo.eval(u, &zero);
            let b = v_hi.eval(u, &zero);
            simpson(|v| f.eval(u, v), &a, &b)
        };
        // The inner integral has degree at most 3 + 4 in u.
        let oracle = newton_cotes(inner, &u_lo, &u_hi, 7);
        prop_assert_eq!(integrate_chamber(&f, &ch), oracle);
    }

    #[test]
    fn sign_on_interval_matches_root_structure(
        roots in proptest::collection::vec((small_rat(), 1usize..=2), 0..=4),
        lead in prop_oneof![Just(1i64), Just(-1i64), Just(3i64)],
        a in small_rat(),
        w in 1i64..=10,
    ) {
        let b = &a + rat(w, 2);
        let mut p = UniPoly::constant(int(lead));
        let mut points = vec![a.clone(), b.clone()];
        for (r, mult) in &roots {
            for _ in 0..*mult {
                p = &p * &UniPoly::linear(-r.clone(), Rational::one());
            }
            if r > &a && r < &b {
                points.push(r.clone());
            }
        }
        points.sort();
        points.dedup();
        // p has constant sign between consecutive points, so endpoints, roots and
        // midpoints decide the sign on [a, b].
        let mut signs = Vec::new();
        for w in points.windows(2) {
            signs.push(sign_of(&p.eval(&w[0])));
            signs.push(sign_of(&p.eval(&((&w[0] + &w[1]) / int(2)))));
        }
        signs.push(sign_of(&p.eval(&b)));
        let expected = if signs.iter().all(|s| *s >= 0) {
            IntervalSign::Nonnegative
        } else if signs.iter().all(|s| *s <= 0) {
            IntervalSign::Nonpositive
        } else {
            IntervalSign::Mixed
        };
        let got = sign_on_interval(&p, &a, &b);
        if signs.iter().all(|s| *s == 0) {
            prop_assert!(got != IntervalSign::Mixed);
        } else {
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn count_roots_counts_distinct_roots_in_half_open_interval(
        roots in proptest::collection::vec((small_rat(), 1usize..=3), 1..=4),
        a in small_rat(),
        w in 1i64..=10,
    ) {
        let b = &a + rat(w, 2);
        let mut p = UniPoly::constant(Rational::one());
        let mut distinct: Vec<Rational> = Vec::new();
        for (r, mult) in &roots {
            for _ in 0..*mult {
                p = &p * &UniPoly::linear(-r.clone(), Rational::one());
            }
            if !distinct.contains(r) {
                distinct.push(r.clone());
            }
        }
        let expected = distinct.iter().filter(|r| *r > &a && *r <= &b).count();
        prop_assert_eq!(count_roots(&p, &a, &b), expected);
    }

    #[test]
    fn polynomial_ring_laws(p in poly(5), q in poly(5), r in poly(5), x in small_rat()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
        prop_assert_eq!(p.antiderivative().derivative(), p.clone());
    }

    #[test]
    fn division_with_remainder(p in poly(7), d in poly(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn solve_returns_a_solution(
        entries in proptest::collection::vec(small_rat(), 9),
        rhs in proptest::collection::vec(small_rat(), 3),
    ) {
        let m: Matrix = entries.chunks(3).map(|r| r.to_vec()).collect();
        match solve(&m, &rhs) {
            Some(x) => {
                for (row, b) in m.iter().zip(&rhs) {
                    let lhs = row.iter().zip(&x).fold(Rational::zero(), |acc, (a, xi)| acc + a * xi);
                    prop_assert_eq!(&lhs, b);
                }
            }
            None => prop_assert!(determinant(&m).is_zero()),
        }
    }

    #[test]
    fn determinant_is_multiplicative(
        a in proptest::collection::vec(small_rat(), 9),
        b in proptest::collection::vec(small_rat(), 9),
    ) {
        let ma: Matrix = a.chunks(3).map(|r| r.to_vec()).collect();
        let mb: Matrix = b.chunks(3).map(|r| r.to_vec()).collect();
        let prod: Matrix = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).fold(Rational::zero(), |acc, k| acc + &ma[i][k] * &mb[k][j]))
                    .collect()
            })
            .collect();
        prop_assert_eq!(determinant(&prod), determinant(&ma) * determinant(&mb));
    }

    #[test]
    fn pfaffian_squares_to_determinant(upper in proptest::collection::vec(-5i64..=5, 10), del in 1usize..=5) {
        let mut vals: [[Rational; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        let mut k = 0;
        for i in 0..5 {
            for j in (i + 1)..5 {
                vals[i][j] = int(upper[k]);
                vals[j][i] = int(-upper[k]);
                k += 1;
            }
        }
        let m: Matrix5 = std::array::from_fn(|i| std::array::from_fn(|j| MultiPoly::constant(vals[i][j].clone())));
        let pf = principal_pfaffian(&m, del);
        let pf_value = pf.terms().values().cloned().fold(Rational::zero(), |acc, c| acc + c);
        let keep: Vec<usize> = (0..5).filter(|&i| i + 1 != del).collect();
        let minor: Matrix = keep.iter().map(|&i| keep.iter().map(|&j| vals[i][j].clone()).collect()).collect();
        prop_assert_eq!(&pf_value * &pf_value, determinant(&minor));
    }
}
