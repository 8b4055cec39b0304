//! Property tests for the surface Zariski oracle and the threefold lattice,
//! run on the surfaces and geometries shipped in the corpus.

use std::sync::{Arc, OnceLock};

use kstab_core::corpus::{load_corpus, Corpus};
use kstab_core::exact::rat;
use kstab_core::lattice::{monoid_decompose, DivisorClass, SurfaceGeometry, ThreefoldGeometry};
use kstab_core::zariski::{is_nef_at, vol_at, zariski_at};
use proptest::prelude::*;

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        load_corpus(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).expect("shipped corpus loads")
    })
}

fn surfaces() -> Vec<Arc<SurfaceGeometry>> {
    corpus()
        .families
        .iter()
        .flat_map(|f| f.surfaces.iter().cloned())
        .filter(|s| s.cone_complete)
        .collect()
}

fn geometries() -> Vec<Arc<ThreefoldGeometry>> {
    corpus().families.iter().flat_map(|f| f.geometries.iter().cloned()).collect()
}

/// An effective class: a nonnegative combination of the listed curves.
fn effective(s: &SurfaceGeometry, weights: &[(i64, i64)]) -> DivisorClass {
    let mut d = DivisorClass::zero(s.rank());
    for (curve, (n, den)) in s.curves.iter().zip(weights.iter().cycle()) {
        d = &d + &curve.class.scale(&rat(*n, *den));
    }
    d
}

fn weights() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((0i64..=6, 1i64..=4), 1..=12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_satisfies_its_invariants(idx in 0usize..64, w in weights()) {
        let all = surfaces();
        let s = &all[idx % all.len()];
        let d = effective(s, &w);
        let z = zariski_at(s, &d).expect("effective classes are pseudo-effective");
        prop_assert!(z.violations(s).is_empty(), "{:?}", z.violations(s));
        let mut sum = z.positive.clone();
        for (name, c) in &z.negative {
            sum = &sum + &s.curve(name).unwrap().class.scale(c);
        }
        prop_assert_eq!(sum, d);
        prop_assert!(is_nef_at(s, &z.positive));
    }

    #[test]
    fn decomposition_is_idempotent(idx in 0usize..64, w in weights()) {
        let all = surfaces();
        let s = &all[idx % all.len()];
        let z = zariski_at(s, &effective(s, &w)).unwrap();
        let again = zariski_at(s, &z.positive).unwrap();
        prop_assert_eq!(&again.positive, &z.positive);
        prop_assert!(again.negative.is_empty());
    }

    #[test]
    fn volume_is_monotone_along_effective_curves(
        idx in 0usize..64,
        w in weights(),
        curve in 0usize..16,
        t1 in 0i64..=12,
        t2 in 0i64..=12,
    ) {
        let all = surfaces();
        let s = &all[idx % all.len()];
        let c = &s.curves[curve % s.curves.len()].class;
        // D + C keeps D + C - vC effective for v in [0, 1].
        let d = &effective(s, &w) + c;
        let (a, b) = (t1.min(t2), t1.max(t2));
        let va = vol_at(s, &(&d - &c.scale(&rat(a, 12)))).unwrap();
        let vb = vol_at(s, &(&d - &c.scale(&rat(b, 12)))).unwrap();
        prop_assert!(va >= vb);
    }

    #[test]
    fn nef_classes_are_their_own_positive_part(idx in 0usize..64, w in weights()) {
        let all = surfaces();
        let s = &all[idx % all.len()];
        let p = zariski_at(s, &effective(s, &w)).unwrap().positive;
        prop_assert_eq!(vol_at(s, &p).unwrap(), s.dot(&p, &p));
    }

    #[test]
    fn triple_product_is_symmetric(
        idx in 0usize..64,
        a in proptest::collection::vec(-3i64..=3, 6),
        b in proptest::collection::vec(-3i64..=3, 6),
        c in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let all = geometries();
        let g = &all[idx % all.len()];
        let n = g.rank();
        let class = |v: &[i64]| DivisorClass::new(v[..n].iter().map(|&x| rat(x, 1)).collect());
        let (a, b, c) = (class(&a), class(&b), class(&c));
        let x = g.triple_const(&a, &b, &c);
        for (p, q, r) in [(&a, &c, &b), (&b, &a, &c), (&b, &c, &a), (&c, &a, &b), (&c, &b, &a)] {
            prop_assert_eq!(&g.triple_const(p, q, r), &x);
        }
    }

    #[test]
    fn triple_product_is_trilinear(
        idx in 0usize..64,
        a in proptest::collection::vec(-3i64..=3, 6),
        b in proptest::collection::vec(-3i64..=3, 6),
        c in proptest::collection::vec(-3i64..=3, 6),
        k in -4i64..=4,
    ) {
        let all = geometries();
        let g = &all[idx % all.len()];
        let n = g.rank();
        let class = |v: &[i64]| DivisorClass::new(v[..n].iter().map(|&x| rat(x, 1)).collect());
        let (a, b, c) = (class(&a), class(&b), class(&c));
        let k = rat(k, 1);
        let lhs = g.triple_const(&(&a.scale(&k) + &b), &c, &c);
        let rhs = g.triple_const(&a, &c, &c) * &k + g.triple_const(&b, &c, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monoid_decomposition_reconstructs_target(
        gens in proptest::collection::vec(proptest::collection::vec(0i64..=2, 3), 1..=4),
        coeffs in proptest::collection::vec(0u64..=3, 4),
    ) {
        let gens: Vec<DivisorClass> = gens
            .iter()
            .map(|v| DivisorClass::new(v.iter().map(|&x| rat(x, 1)).collect()))
            .collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let mut target = DivisorClass::zero(3);
        for (g, c) in gens.iter().zip(&coeffs) {
            target = &target + &g.scale(&rat(*c as i64, 1));
        }
        let found = monoid_decompose(&target, &gens).expect("a decomposition exists");
        let mut sum = DivisorClass::zero(3);
        for (g, c) in gens.iter().zip(&found) {
            sum = &sum + &g.scale(&rat(*c as i64, 1));
        }
        prop_assert_eq!(sum, target);
    }
}

#[test]
fn shipped_surfaces_are_nonempty() {
    assert!(surfaces().len() >= 7);
    for s in surfaces() {
        assert!(!s.curves.is_empty(), "{}", s.name);
    }
}
