//! Verification and evaluation of flag certificates.

use num_traits::{Signed, Zero};

use super::divisorial::eval_s_divisor;
use super::{flag_verdict, min_reciprocal, FlagCertificate, FlagUChamber, InvariantReport, UChamber, VChamber, Verdict};
use crate::exact::linalg::is_negative_definite;
use crate::exact::{
    int, integrate_chamber, integrate_uni, sign_on_interval, AffineUV, Chamber2D, IntervalSign, Rational,
    UniPoly,
};
use crate::lattice::{restriction_mismatches, AffineClass, PolyClass};

fn interval(lo: &Rational, hi: &Rational) -> String {
    format!("[{lo}, {hi}]")
}

/// Base chamber supplying `P(u)` and `N(u)` for a flag chamber.
fn base_chamber<'a>(cert: &'a FlagCertificate, fc: &FlagUChamber) -> Option<&'a UChamber> {
    cert.base.chamber_containing(&fc.u_lo, &fc.u_hi)
}

/// Restricted positive part `P(u)|_S` as an affine class.
fn restricted_positive(cert: &FlagCertificate, fc: &FlagUChamber) -> Option<AffineClass> {
    let bc = base_chamber(cert, fc)?;
    AffineClass::from_poly(&cert.restriction.apply_poly(&bc.positive))
}

/// Integration region of a v-chamber.
fn region(fc: &FlagUChamber, vc: &VChamber) -> Result<Chamber2D, String> {
    let lo = AffineUV::from_uni(&vc.v_lo).ok_or_else(|| format!("bound {} is not affine", vc.v_lo))?;
    let hi = AffineUV::from_uni(&vc.v_hi).ok_or_else(|| format!("bound {} is not affine", vc.v_hi))?;
    Chamber2D::new(fc.u_lo.clone(), fc.u_hi.clone(), lo, hi).map_err(|e| e.to_string())
}

struct Integrals {
    s_wc: Rational,
    f_p: Rational,
    s_wp_main: Rational,
}

fn integrals(cert: &FlagCertificate) -> Result<Integrals, String> {
    let vol = cert.base.normalizer();
    let s = &cert.surface;
    let mut curve_part = Rational::zero();
    let mut area_part = Rational::zero();
    let mut fp = Rational::zero();
    let mut point_part = Rational::zero();
    for fc in &cert.chambers {
        if let Some(first) = fc.v_chambers.first() {
            let sq0 = s.square_affine(&first.positive).substitute_v(&UniPoly::zero());
            curve_part += integrate_uni(&(&fc.d * &sq0), &fc.u_lo, &fc.u_hi);
        }
        for vc in &fc.v_chambers {
            let ch = region(fc, vc)?;
            area_part += integrate_chamber(&s.square_affine(&vc.positive), &ch);
            let pc = s.dot_affine(&vc.positive, &cert.curve);
            fp += integrate_chamber(&(&pc * &vc.ordp), &ch);
            point_part += integrate_chamber(&(&pc * &pc), &ch);
        }
    }
    let three = int(3);
    Ok(Integrals {
        s_wc: &three / &vol * (curve_part + area_part),
        f_p: int(6) / &vol * fp,
        s_wp_main: three / vol * point_part,
    })
}

/// `S(W; C)`.
pub fn eval_s_curve(cert: &FlagCertificate) -> Result<Rational, String> {
    Ok(integrals(cert)?.s_wc)
}

/// `F_P`; `None` when the certificate carries no point data.
pub fn eval_f_p(cert: &FlagCertificate) -> Result<Option<Rational>, String> {
    if cert.point.is_none() {
        return Ok(None);
    }
    Ok(Some(integrals(cert)?.f_p))
}

/// `S(W; P)`; `None` when the certificate carries no point data.
pub fn eval_s_point(cert: &FlagCertificate) -> Result<Option<Rational>, String> {
    if cert.point.is_none() {
        return Ok(None);
    }
    let i = integrals(cert)?;
    Ok(Some(i.s_wp_main + i.f_p))
}

/// `min{1/S_Y(S), 1/S(W;C)}`, extended by `1/S(W;P)` when point data is present.
pub fn delta_bound(cert: &FlagCertificate) -> Result<Option<Rational>, String> {
    let (s_s, _) = eval_s_divisor(&cert.base);
    let mut vals = vec![s_s, eval_s_curve(cert)?];
    if let Some(p) = eval_s_point(cert)? {
        vals.push(p);
    }
    Ok(min_reciprocal(&vals))
}

fn record(rep: &mut InvariantReport, name: &str, problems: Vec<String>, ok_detail: &str) {
    if problems.is_empty() {
        rep.check(name, true, ok_detail);
    } else {
        rep.check(name, false, problems.join("; "));
    }
}

fn nonneg_at(f: &AffineUV, pts: &[(Rational, Rational)]) -> bool {
    pts.iter().all(|(u, v)| !f.eval(u, v).is_negative())
}

fn structural_problems(cert: &FlagCertificate) -> Vec<String> {
    let s = &cert.surface;
    let g = &cert.base.geometry;
    let mut out = Vec::new();
    if cert.curve.len() != s.rank() {
        out.push("flag curve has wrong length".into());
    }
    if cert.restriction.images.len() != g.rank()
        || cert.restriction.images.iter().any(|c| c.len() != s.rank())
    {
        out.push("restriction map has wrong shape".into());
    }
    for fc in &cert.chambers {
        for t in &fc.nprime {
            if t.class.len() != s.rank() {
                out.push(format!("N' term {} has wrong length", t.label));
            }
        }
        for vc in &fc.v_chambers {
            if vc.positive.len() != s.rank() {
                out.push("positive part has wrong length".into());
            }
            for t in &vc.negative {
                if s.curve(&t.curve).is_none() {
                    out.push(format!("unknown curve {} on {}", t.curve, s.name));
                }
            }
        }
    }
    out
}

/// Runs every flag check and evaluates `S(W; C)`, `F_P`, `S(W; P)` and the
/// `delta` bound.
pub fn verify_flag(cert: &FlagCertificate) -> InvariantReport {
    let mut rep = InvariantReport::new(&cert.id, &cert.family, &cert.center, "flag", cert.status.clone());
    let s = &cert.surface;
    let g = &cert.base.geometry;

    let structure = structural_problems(cert);
    let structure_ok = structure.is_empty();
    record(&mut rep, "dimensions", structure, "all classes match their lattices");
    if !structure_ok {
        return rep;
    }
    match restriction_mismatches(g, s, &cert.restriction) {
        Ok(m) if m.is_empty() => rep.check("restriction", true, "D1.D2.S = res D1 . res D2 for all pairs"),
        Ok(m) => rep.check(
            "restriction",
            false,
            m.iter()
                .map(|x| format!("{}.{}: {} vs {}", x.pair.0, x.pair.1, x.threefold, x.surface))
                .collect::<Vec<_>>()
                .join("; "),
        ),
        Err(e) => rep.check("restriction", false, e.to_string()),
    }
    rep.check(
        "surface-class",
        cert.restriction.surface_class == cert.base.divisor,
        "restriction surface is the divisor of the base certificate",
    );

    // Tiling of [0, tau] by flag chambers, each inside a base chamber on the base model.
    let mut tiling = Vec::new();
    let tau = &cert.base.tau;
    match (cert.chambers.first(), cert.chambers.last()) {
        (Some(f), Some(l)) => {
            if !f.u_lo.is_zero() || &l.u_hi != tau {
                tiling.push(format!("chambers cover [{}, {}], tau is {tau}", f.u_lo, l.u_hi));
            }
        }
        _ => tiling.push("no chambers".into()),
    }
    for w in cert.chambers.windows(2) {
        if w[0].u_hi != w[1].u_lo {
            tiling.push(format!("gap or overlap at u = {}", w[0].u_hi));
        }
    }
    for fc in &cert.chambers {
        if fc.u_lo >= fc.u_hi {
            tiling.push(format!("chamber {} is empty", interval(&fc.u_lo, &fc.u_hi)));
        }
        match base_chamber(cert, fc) {
            None => tiling.push(format!("{} lies in no base chamber", interval(&fc.u_lo, &fc.u_hi))),
            Some(bc) if bc.geometry.name != g.name => tiling.push(format!(
                "{} lies on the model {}, not {}",
                interval(&fc.u_lo, &fc.u_hi),
                bc.geometry.name,
                g.name
            )),
            Some(_) => {}
        }
    }
    let tiling_ok = tiling.is_empty();
    record(&mut rep, "u-tiling", tiling, "flag chambers tile [0, tau] inside base chambers");
    if !tiling_ok {
        return rep;
    }

    let mut affine = Vec::new();
    let mut d_consistency = Vec::new();
    let mut d_nonneg = Vec::new();
    let mut v_tiling = Vec::new();
    let mut identity = Vec::new();
    let mut nef = Vec::new();
    let mut orthogonal = Vec::new();
    let mut n_nonneg = Vec::new();
    let mut definite = Vec::new();
    let mut ordp = Vec::new();
    let mut threshold = Vec::new();
    for fc in &cert.chambers {
        let iv = interval(&fc.u_lo, &fc.u_hi);
        let bc = base_chamber(cert, fc).expect("tiling checked");
        let Some(pres) = restricted_positive(cert, fc) else {
            affine.push(format!("P(u)|_S is not affine on {iv}"));
            continue;
        };

        let mut nres = PolyClass::zero(s.rank());
        for t in &bc.negative {
            let img = cert.restriction.apply(&t.class);
            nres = &nres + &PolyClass::from_scaled(&img, &t.coefficient);
        }
        let mut declared = PolyClass::from_scaled(&cert.curve, &fc.d);
        for t in &fc.nprime {
            declared = &declared + &PolyClass::from_scaled(&t.class, &t.coefficient);
            if sign_on_interval(&t.coefficient, &fc.u_lo, &fc.u_hi) != IntervalSign::Nonnegative {
                d_nonneg.push(format!("N' coefficient of {} on {iv}", t.label));
            }
        }
        if nres != declared {
            d_consistency.push(format!(
                "N(u)|_S = {} but d C + N' = {} on {iv}",
                nres.render(&s.basis),
                declared.render(&s.basis)
            ));
        }
        if sign_on_interval(&fc.d, &fc.u_lo, &fc.u_hi) != IntervalSign::Nonnegative {
            d_nonneg.push(format!("d(u) = {} on {iv}", fc.d));
        }

        match fc.v_chambers.first() {
            Some(f) if f.v_lo.is_zero() => {}
            _ => v_tiling.push(format!("v-chambers do not start at 0 on {iv}")),
        }
        for w in fc.v_chambers.windows(2) {
            if w[0].v_hi != w[1].v_lo {
                v_tiling.push(format!("gap at v = {} on {iv}", w[0].v_hi));
            }
        }
        if let Some(l) = fc.v_chambers.last() {
            if l.v_hi != fc.t {
                v_tiling.push(format!("v-chambers end at {}, t(u) = {} on {iv}", l.v_hi, fc.t));
            }
            let sq = s.square_affine(&l.positive).substitute_v(&fc.t);
            if !sq.is_zero() {
                threshold.push(format!("P(u, t(u))^2 = {sq} on {iv}"));
            }
        }

        let v_aff = AffineUV::new(Rational::zero(), Rational::zero(), int(1));
        for vc in &fc.v_chambers {
            let ch = match region(fc, vc) {
                Ok(ch) => ch,
                Err(e) => {
                    v_tiling.push(format!("{e} on {iv}"));
                    continue;
                }
            };
            let pts = ch.vertices();
            let vv = format!("{iv} x [{}, {}]", vc.v_lo, vc.v_hi);
            let mut lhs = vc.positive.clone();
            let mut support = Vec::new();
            for t in &vc.negative {
                let curve = s.curve(&t.curve).expect("structure checked");
                lhs = &lhs + &AffineClass::from_scaled(&curve.class, &t.coefficient);
                support.push(curve.class.clone());
                if !s.dot_affine(&vc.positive, &curve.class).is_zero() {
                    orthogonal.push(format!("P.{} is not zero on {vv}", t.curve));
                }
                if !nonneg_at(&t.coefficient, &pts) {
                    n_nonneg.push(format!("coefficient {} of {} on {vv}", t.coefficient, t.curve));
                }
            }
            let rhs = &pres - &AffineClass::from_scaled(&cert.curve, &v_aff);
            if lhs != rhs {
                identity.push(format!("P + N differs from P(u)|_S - vC on {vv}"));
            }
            for curve in &s.curves {
                let f = s.dot_affine(&vc.positive, &curve.class);
                if !nonneg_at(&f, &pts) {
                    nef.push(format!("P.{} = {} on {vv}", curve.name, f));
                }
            }
            if !support.is_empty() {
                let gram: Vec<Vec<Rational>> = support
                    .iter()
                    .map(|a| support.iter().map(|b| s.dot(a, b)).collect())
                    .collect();
                if !is_negative_definite(&gram) {
                    definite.push(format!("support of N is not negative definite on {vv}"));
                }
            }
            if !nonneg_at(&vc.ordp, &pts) {
                ordp.push(format!("ord_P = {} on {vv}", vc.ordp));
            }
        }
    }
    record(&mut rep, "affine-restriction", affine, "P(u)|_S is affine in u");
    record(&mut rep, "d-consistency", d_consistency, "N(u)|_S = d(u) C + N'(u)");
    record(&mut rep, "d-nonnegative", d_nonneg, "d(u) and N' coefficients are nonnegative");
    record(&mut rep, "v-tiling", v_tiling, "v-chambers tile [0, t(u)]");
    record(&mut rep, "class-identity", identity, "P + N = P(u)|_S - vC on every chamber");
    record(&mut rep, "nef", nef, "P is nef at every chamber vertex");
    record(&mut rep, "orthogonality", orthogonal, "P.N_i = 0 identically");
    record(&mut rep, "n-nonnegative", n_nonneg, "N coefficients are nonnegative at vertices");
    record(&mut rep, "negative-definite", definite, "N supports are negative definite");
    record(&mut rep, "ordp-nonnegative", ordp, "ord_P is nonnegative at vertices");
    record(&mut rep, "threshold-volume", threshold, "P(u, t(u))^2 = 0 identically");
    if cert.point.is_none() && (cert.expected.f_p.is_some() || cert.expected.s_wp.is_some()) {
        rep.check("point-data", false, "point values expected but no point data");
    }
    if !rep.checks_pass() {
        return rep;
    }

    let ints = match integrals(cert) {
        Ok(i) => i,
        Err(e) => {
            rep.check("integration", false, e);
            return rep;
        }
    };
    let (s_s, _) = eval_s_divisor(&cert.base);
    rep.value("S_S", s_s.clone());
    rep.value("S_WC", ints.s_wc.clone());
    rep.compare("S_WC", &cert.expected.s_wc, &ints.s_wc);
    let mut all = vec![s_s, ints.s_wc.clone()];
    if cert.point.is_some() {
        let s_wp = &ints.s_wp_main + &ints.f_p;
        rep.value("F_P", ints.f_p.clone());
        rep.value("S_WP", s_wp.clone());
        if let Some(e) = &cert.expected.f_p {
            rep.compare("F_P", e, &ints.f_p);
        }
        if let Some(e) = &cert.expected.s_wp {
            rep.compare("S_WP", e, &s_wp);
        }
        all.push(s_wp);
    }
    match min_reciprocal(&all) {
        Some(delta) => {
            if let Some(e) = &cert.expected.delta {
                rep.compare("delta", e, &delta);
            }
            rep.value("delta", delta);
            rep.verdict = flag_verdict(&all);
        }
        None => {
            rep.check("positive-values", false, "an S value is not positive");
            rep.verdict = Verdict::Invalid;
        }
    }
    rep
}
