//! Acceptance suite: one PASS/FAIL line per criterion, all comparisons exact.
//!
//! A handful of published values disagree with what their own recorded
//! decompositions integrate to. Those items are listed in `DISPUTED` with the
//! reason; they are reported as FAIL, and the run succeeds only if the set of
//! failing items is exactly that list, so a fix or a new failure both show up.

use std::collections::BTreeSet;
use std::process::ExitCode;

use kstab_core::certify::oracle::check_flag_oracle;
use kstab_core::certify::{
    bound_s_by_tau, eval_f_p, eval_s_curve, eval_s_divisor, eval_s_point, Certificate, DivisorialCertificate,
    FlagCertificate, UpperBoundCertificate,
};
use kstab_core::corpus::{load_corpus, Corpus};
use kstab_core::exact::pfaffian::{
    pfaffians_5, printed_relation_pf4, printed_relation_pf5, single_term_variants, smoothing_matrix,
    specialize_non_toric, NON_TORIC_EQUATIONS,
};
use kstab_core::exact::{int, parse_rational, poly_identity, MultiPoly, Rational, UniPoly};
use kstab_core::lattice::{monoid_decompose, DivisorClass};
use num_traits::Zero;

/// Items whose published value is not reproduced, with the recomputed value.
const DISPUTED: &[(&str, &str)] = &[
    ("2.22/Ctilde S_WC", "the recorded decompositions integrate to 19/30"),
    ("2.22/Cr S_WC", "the recorded decompositions integrate to 11/24"),
    ("3.12/CQ S_WC", "the recorded decompositions integrate to 17/28"),
    ("3.12/CR S_WC", "the recorded decompositions integrate to 4/7"),
    ("3.12/CS S_WC", "the recorded decompositions integrate to 23/56"),
    ("3.12/L1 S_WC", "the recorded decompositions integrate to 229/224"),
    ("4.13/Z S_WC", "the recorded squares integrate to 8/13"),
    ("3.13/ODP beta reproduced", "the two volume pieces integrate to beta = -1/20"),
];

struct Item {
    label: String,
    ok: bool,
    detail: String,
}

struct Criterion {
    number: usize,
    title: &'static str,
    items: Vec<Item>,
}

impl Criterion {
    fn new(number: usize, title: &'static str) -> Self {
        Criterion {
            number,
            title,
            items: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push(Item {
            label: label.into(),
            ok,
            detail: detail.into(),
        });
    }

    fn value(&mut self, label: impl Into<String>, expected: &str, computed: Option<Rational>) {
        let expected = parse_rational(expected).expect("literal rational");
        let (ok, detail) = match computed {
            Some(c) => (c == expected, format!("expected {expected}, computed {c}")),
            None => (false, format!("expected {expected}, nothing computed")),
        };
        self.check(label, ok, detail);
    }
}

struct Ctx {
    corpus: Corpus,
}

impl Ctx {
    fn cert(&self, family: &str, id: &str) -> &Certificate {
        self.corpus
            .family(family)
            .and_then(|f| f.certificate(id))
            .unwrap_or_else(|| panic!("{family}/{id} is missing from the corpus"))
    }

    fn divisorial(&self, family: &str, id: &str) -> &DivisorialCertificate {
        match self.cert(family, id) {
            Certificate::Divisorial(d) => d,
            _ => panic!("{family}/{id} is not divisorial"),
        }
    }

    fn flag(&self, family: &str, id: &str) -> &FlagCertificate {
        match self.cert(family, id) {
            Certificate::Flag(f) => f,
            _ => panic!("{family}/{id} is not a flag"),
        }
    }

    fn upper(&self, family: &str, id: &str) -> &UpperBoundCertificate {
        match self.cert(family, id) {
            Certificate::UpperBound(u) => u,
            _ => panic!("{family}/{id} is not an upper-bound certificate"),
        }
    }

    fn s(&self, family: &str, id: &str) -> Option<Rational> {
        Some(eval_s_divisor(self.divisorial(family, id)).0)
    }

    fn beta(&self, family: &str, id: &str) -> Option<Rational> {
        Some(eval_s_divisor(self.divisorial(family, id)).1)
    }

    fn s_wc(&self, family: &str, id: &str) -> Option<Rational> {
        eval_s_curve(self.flag(family, id)).ok()
    }

    fn s_wp(&self, family: &str, id: &str) -> Option<Rational> {
        eval_s_point(self.flag(family, id)).ok().flatten()
    }

    fn f_p(&self, family: &str, id: &str) -> Option<Rational> {
        eval_f_p(self.flag(family, id)).ok().flatten()
    }

    fn upper_values(&self, family: &str, id: &str) -> Option<(Rational, Rational, Rational, Rational)> {
        let rep = Certificate::UpperBound(self.upper(family, id).clone()).verify();
        Some((
            rep.get("nef_part")?.clone(),
            rep.get("tail")?.clone(),
            rep.get("S_bound")?.clone(),
            rep.get("beta_lower")?.clone(),
        ))
    }
}

fn poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
}

fn criterion_1(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(1, "family 2.22 divisorial values");
    c.value("2.22/Qtilde S", "43/60", ctx.s("2.22", "Qtilde"));
    c.value("2.22/Qtilde beta", "17/60", ctx.beta("2.22", "Qtilde"));
    c.value("2.22/HCtilde S", "11/12", ctx.s("2.22", "HCtilde"));
    c.value("2.22/Ebar S", "19/30", ctx.s("2.22", "Ebar"));
    c.value("2.22/Ebar beta", "11/30", ctx.beta("2.22", "Ebar"));
    c
}

fn criterion_2(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(2, "family 2.22 flag values");
    c.value("2.22/ltilde S_WC", "1", ctx.s_wc("2.22", "ltilde"));
    c.value("2.22/Ctilde S_WC", "53/80", ctx.s_wc("2.22", "Ctilde"));
    c.value("2.22/Cr S_WC", "39/80", ctx.s_wc("2.22", "Cr"));
    c.value("2.22/pointO S_WC", "47/60", ctx.s_wc("2.22", "pointO"));
    c.value("2.22/pointO S_WP", "47/60", ctx.s_wp("2.22", "pointO"));
    c.value("2.22/SHCprime S", "17/30", ctx.s("2.22", "SHCprime"));
    c.value("2.22/Cprime S_WC", "43/60", ctx.s_wc("2.22", "Cprime"));
    c.value("2.22/Crprime S_WC", "27/40", ctx.s_wc("2.22", "Crprime"));
    c.value("2.22/Oprime S_WC", "1", ctx.s_wc("2.22", "Oprime"));
    c.value("2.22/Oprime F_P", "1/12", ctx.f_p("2.22", "Oprime"));
    c.value("2.22/Oprime S_WP", "1", ctx.s_wp("2.22", "Oprime"));
    c.value("2.22/s0bar S_WC", "43/60", ctx.s_wc("2.22", "s0bar"));
    c
}

fn criterion_3(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(3, "family 3.12 values");
    c.value("3.12/EL S", "37/56", ctx.s("3.12", "EL"));
    c.value("3.12/EL beta", "19/56", ctx.beta("3.12", "EL"));
    c.value("3.12/Q S", "129/224", ctx.s("3.12", "Q"));
    c.value("3.12/E2 S", "51/56", ctx.s("3.12", "E2"));
    c.value("3.12/CQ S_WC", "159/224", ctx.s_wc("3.12", "CQ"));
    c.value("3.12/CR S_WC", "151/224", ctx.s_wc("3.12", "CR"));
    c.value("3.12/CS S_WC", "9/28", ctx.s_wc("3.12", "CS"));
    c.value("3.12/Pi S", "227/448", ctx.s("3.12", "Pi"));
    c.value("3.12/La S_WC", "753/1120", ctx.s_wc("3.12", "La"));
    c.value("3.12/L1 S_WC", "31/32", ctx.s_wc("3.12", "L1"));
    c.value("3.12/L2 S_WC", "2885/4032", ctx.s_wc("3.12", "L2"));
    c
}

fn criterion_4(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(4, "family 4.13 values");
    c.value("4.13/Rxy S", "49/52", ctx.s("4.13", "Rxy"));
    c.value("4.13/Rxy beta", "3/52", ctx.beta("4.13", "Rxy"));
    c.value("4.13/E S", "35/52", ctx.s("4.13", "E"));
    c.value("4.13/E beta", "17/52", ctx.beta("4.13", "E"));
    c.value("4.13/Cxy S_WC", "35/52", ctx.s_wc("4.13", "Cxy"));
    c.value("4.13/Cprime S_WC", "27/52", ctx.s_wc("4.13", "Cprime"));
    c.value("4.13/Z S_WC", "87/104", ctx.s_wc("4.13", "Z"));
    let fam = ctx.corpus.family("4.13").unwrap();
    let g = fam.geometry("Xbar").unwrap();
    let derived = fam.derivations.iter().any(|d| d.geometry == "Xbar");
    c.check("4.13/Xbar table derived by blowups", derived, "derivation record present");
    let k = &g.anticanonical;
    c.value("4.13/Xbar (-K)^3", "26", Some(g.triple_const(k, k, k)));
    c
}

fn criterion_5(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(5, "family 3.13 values");
    c.value("3.13/betaE beta", "1/10", ctx.beta("3.13", "betaE"));
    c.value("3.13/betaS beta", "1/20", ctx.beta("3.13", "betaS"));
    let vals = ctx.upper_values("3.13", "FZ");
    c.value("3.13/FZ nef part", "5/6", vals.as_ref().map(|v| v.0.clone()));
    c.value("3.13/FZ tail", "16/15", vals.as_ref().map(|v| v.1.clone()));
    c.value("3.13/FZ bound", "19/10", vals.as_ref().map(|v| v.2.clone()));
    let lower = vals.map(|v| v.3);
    let claimed = parse_rational("1/20").unwrap();
    c.check(
        "3.13/FZ beta >= 1/20",
        lower.as_ref().is_some_and(|b| b >= &claimed),
        format!("A - bound = {}", lower.map(|b| b.to_string()).unwrap_or_default()),
    );
    let v = ctx.corpus.family("3.13").unwrap().geometry("V").unwrap();
    let pullback = v.classes.get("pullback").expect("V names the pullback class");
    c.value("3.13/V pullback^3", "30", Some(v.triple_const(pullback, pullback, pullback)));
    c
}

fn criterion_6(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(6, "intermediate volume polynomials");
    let two_minus_u = poly(&[2, -1]);
    let three_minus_u = poly(&[3, -1]);
    let cube = |p: &UniPoly| &(p * p) * p;
    let cases: [(&str, &str, &str, usize, UniPoly); 6] = [
        ("2u^3-6u^2-18u+30", "2.22", "Qtilde", 0, poly(&[30, -18, -6, 2])),
        ("8(2-u)^3", "2.22", "Qtilde", 1, cube(&two_minus_u).scale(&int(8))),
        ("u^3-6u^2-12u+30", "2.22", "HCtilde", 0, poly(&[30, -12, -6, 1])),
        ("(2-u)(u^2-10u+22)", "2.22", "HCtilde", 1, &two_minus_u * &poly(&[22, -10, 1])),
        ("6u^3-6u^2-24u+30", "2.22", "Ebar", 0, poly(&[30, -24, -6, 6])),
        ("2(3-u)^3", "3.13", "betaS", 1, cube(&three_minus_u).scale(&int(2))),
    ];
    for (name, family, id, chamber, expected) in cases {
        let vols = ctx.divisorial(family, id).chamber_volumes();
        let got = vols.get(chamber).cloned();
        let detail = format!("{family}/{id} chamber {chamber}: {}", got.as_ref().map(|p| p.to_string()).unwrap_or_default());
        c.check(name, got.as_ref() == Some(&expected), detail);
    }
    let expected = poly(&[30, 0, -18, 4]);
    let got = ctx.upper("3.13", "FZ").nef_volume();
    let detail = format!("3.13/FZ nef interval: {}", got.as_ref().map(|p| p.to_string()).unwrap_or_default());
    c.check("4u^3-18u^2+30", got.as_ref() == Some(&expected), detail);
    c
}

fn criterion_7(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(7, "blowup derivations reproduce the printed tables");
    for (family, geometry) in [("2.22", "Xtilde"), ("2.22", "Xbar"), ("3.12", "Xbar"), ("3.13", "V")] {
        let fam = ctx.corpus.family(family).unwrap();
        let matched = fam
            .derivations
            .iter()
            .any(|d| d.geometry == geometry && d.matched_printed_table);
        c.check(format!("{family}/{geometry} printed table"), matched, "derived table equals printed table");
    }
    let triple = |family: &str, geometry: &str, name: &str| {
        let g = ctx.corpus.family(family).unwrap().geometry(geometry).unwrap();
        let i = g.index_of(name).expect("basis element");
        Some(g.triple(i, i, i))
    };
    c.value("2.22/Xtilde E^3", "-4", triple("2.22", "Xtilde", "E"));
    c.value("2.22/Xbar E^3", "-6", triple("2.22", "Xbar", "E"));
    c.value("3.13/V E^3", "2", triple("3.13", "V", "E"));
    for e in ["E1", "E2", "E3"] {
        c.value(format!("3.13/V {e}^3"), "1", triple("3.13", "V", e));
    }
    c
}

fn criterion_8(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(8, "oracle equivalence");
    let flags: Vec<&FlagCertificate> = ctx
        .corpus
        .certificates()
        .filter_map(|x| match x {
            Certificate::Flag(f) => Some(f),
            _ => None,
        })
        .collect();
    c.check("flag certificates present", flags.len() >= 17, format!("{} flags", flags.len()));
    for f in flags {
        let seven = check_flag_oracle(f, 25, 7);
        let other = check_flag_oracle(f, 25, 8);
        let ok = seven.mismatches.is_empty() && other.mismatches.is_empty();
        c.check(
            format!("{}/{} oracle", f.family, f.id),
            ok,
            format!(
                "{} points, {} mismatches at seed 7, {} at seed 8",
                seven.points,
                seven.mismatches.len(),
                other.mismatches.len()
            ),
        );
    }
    c
}

fn criterion_9(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(9, "property suites");
    for cert in ctx.corpus.certificates() {
        let Certificate::Divisorial(d) = cert else { continue };
        let (s, _) = eval_s_divisor(d);
        let bound = bound_s_by_tau(&d.tau);
        c.check(format!("{}/{} S <= 3/4 tau", d.family, d.id), s <= bound, format!("S = {s}, bound {bound}"));
        let dpoly = d.divisor.to_poly();
        let identity = d.chambers.iter().zip(d.chamber_volumes()).all(|(ch, vol)| {
            let p = &ch.positive;
            let rhs = ch.geometry.triple_eval(p, p, &dpoly).unwrap().scale(&int(-3));
            vol.derivative() == rhs
        });
        c.check(format!("{}/{} d(P^3)/du = -3 P^2.D", d.family, d.id), identity, "on every chamber");
        let last = d.chamber_volumes().pop().unwrap();
        c.check(
            format!("{}/{} vol(tau) = 0", d.family, d.id),
            last.eval(&d.tau).is_zero(),
            format!("P(tau)^3 = {}", last.eval(&d.tau)),
        );
    }
    for cert in ctx.corpus.certificates() {
        let Certificate::Flag(f) = cert else { continue };
        let rep = cert.verify();
        let ok = rep.checks.iter().any(|k| k.name == "threshold-volume" && k.passed);
        c.check(format!("{}/{} vol(P(u, t(u))) = 0", f.family, f.id), ok, "identically in u");
    }
    let g = ctx.corpus.family("2.22").unwrap().geometry("Xtilde").unwrap();
    let class = |n: &str| {
        g.classes
            .get(n)
            .cloned()
            .unwrap_or_else(|| DivisorClass::unit(g.rank(), g.index_of(n).unwrap()))
    };
    let found = monoid_decompose(&g.anticanonical, &[class("Q"), class("HC"), class("E")]);
    c.check(
        "-K = Q + 2 H_C + 2 E",
        found.as_deref() == Some(&[1, 2, 2][..]),
        format!("{found:?}"),
    );
    c
}

fn criterion_10(ctx: &Ctx) -> Criterion {
    let mut c = Criterion::new(10, "Pfaffian suite and the one-node example");
    let pfs = pfaffians_5(&smoothing_matrix()).expect("skew-symmetric");
    for (k, (p, eq)) in pfs.iter().zip(NON_TORIC_EQUATIONS).enumerate() {
        let expected = MultiPoly::parse(eq).unwrap();
        c.check(
            format!("a=0,b=1 Pf{}", k + 1),
            poly_identity(&specialize_non_toric(p), &expected),
            eq.to_string(),
        );
    }
    let pf5 = printed_relation_pf5();
    c.check("relation for Pf5 verdict", pf5.holds(&pfs), pf5.render());
    let pf4 = printed_relation_pf4();
    let variants = single_term_variants(&pf4, &pfs);
    c.check(
        "relation for Pf4 verdict",
        !pf4.holds(&pfs) && !variants.is_empty(),
        format!("printed form false, {} single-term corrections hold", variants.len()),
    );
    let odp = ctx.divisorial("3.13", "ODP");
    c.value("3.13/ODP beta stored", "-1/40", Some(odp.expected_beta.clone()));
    c.value("3.13/ODP beta reproduced", "-1/40", ctx.beta("3.13", "ODP"));
    c
}

fn main() -> ExitCode {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let ctx = Ctx {
        corpus: load_corpus(root).expect("shipped corpus loads"),
    };
    let criteria = [
        criterion_1(&ctx),
        criterion_2(&ctx),
        criterion_3(&ctx),
        criterion_4(&ctx),
        criterion_5(&ctx),
        criterion_6(&ctx),
        criterion_7(&ctx),
        criterion_8(&ctx),
        criterion_9(&ctx),
        criterion_10(&ctx),
    ];
    let disputed: BTreeSet<&str> = DISPUTED.iter().map(|(l, _)| *l).collect();
    let mut failing = BTreeSet::new();
    let mut passed = 0;
    for cr in &criteria {
        let bad: Vec<&Item> = cr.items.iter().filter(|i| !i.ok).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        if bad.is_empty() {
            passed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {} ({}/{} items)",
            cr.number,
            cr.title,
            cr.items.len() - bad.len(),
            cr.items.len()
        );
        for item in bad {
            let tag = match DISPUTED.iter().find(|(l, _)| *l == item.label) {
                Some((_, why)) => format!("documented dispute: {why}"),
                None => "UNEXPECTED".to_string(),
            };
            println!("    {}: {} [{tag}]", item.label, item.detail);
            failing.insert(item.label.clone());
        }
    }
    let failing: BTreeSet<&str> = failing.iter().map(String::as_str).collect();
    let unexpected: Vec<&&str> = failing.difference(&disputed).collect();
    let fixed: Vec<&&str> = disputed.difference(&failing).collect();
    println!("{passed}/{} criteria pass", criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
    }
    if !fixed.is_empty() {
        println!("documented disputes that now pass (update the list): {fixed:?}");
    }
    if unexpected.is_empty() && fixed.is_empty() {
        println!("every failing item is a documented dispute");
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
