//! Verification and evaluation of divisorial certificates.

use num_traits::{Signed, Zero};

use super::{bound_s_by_tau, DivisorialCertificate, InvariantReport, UChamber, Verdict};
use crate::exact::{integrate_uni, int, sign_on_interval, IntervalSign, Rational, UniPoly};
use crate::lattice::PolyClass;

/// `P(u)^3` on the chamber's model.
fn chamber_volume(ch: &UChamber) -> UniPoly {
    ch.geometry
        .volume_poly(&ch.positive)
        .expect("dimensions are validated before evaluation")
}

fn interval(ch: &UChamber) -> String {
    format!("[{}, {}]", ch.u_lo, ch.u_hi)
}

/// `S = 1/pullback^3 * sum int P(u)^3 du` and `beta = A - S`.
pub fn eval_s_divisor(cert: &DivisorialCertificate) -> (Rational, Rational) {
    let total = cert.chambers.iter().fold(Rational::zero(), |acc, ch| {
        acc + integrate_uni(&chamber_volume(ch), &ch.u_lo, &ch.u_hi)
    });
    let s = total / cert.normalizer();
    let beta = &cert.log_discrepancy - &s;
    (s, beta)
}

fn dimension_problems(cert: &DivisorialCertificate) -> Vec<String> {
    let n = cert.geometry.rank();
    let mut out = Vec::new();
    if cert.divisor.len() != n || cert.pullback.len() != n {
        out.push("divisor or pullback has wrong length".to_string());
    }
    for ch in &cert.chambers {
        if ch.geometry.basis != cert.geometry.basis {
            out.push(format!("chamber {} lives on a model with a different basis", interval(ch)));
        }
        if ch.positive.len() != n || ch.negative.iter().any(|t| t.class.len() != n) {
            out.push(format!("chamber {} has classes of wrong length", interval(ch)));
        }
    }
    out
}

fn tiling_problems(cert: &DivisorialCertificate) -> Vec<String> {
    let mut out = Vec::new();
    if cert.chambers.is_empty() {
        out.push("no chambers".to_string());
        return out;
    }
    if !cert.chambers[0].u_lo.is_zero() {
        out.push(format!("first chamber starts at {}", cert.chambers[0].u_lo));
    }
    let last = &cert.chambers[cert.chambers.len() - 1];
    if last.u_hi != cert.tau {
        out.push(format!("last chamber ends at {}, tau is {}", last.u_hi, cert.tau));
    }
    for ch in &cert.chambers {
        if ch.u_lo >= ch.u_hi {
            out.push(format!("chamber {} is empty", interval(ch)));
        }
    }
    for w in cert.chambers.windows(2) {
        if w[0].u_hi != w[1].u_lo {
            out.push(format!("gap or overlap between {} and {}", interval(&w[0]), interval(&w[1])));
        }
    }
    out
}

fn record(rep: &mut InvariantReport, name: &str, problems: Vec<String>, ok_detail: &str) {
    if problems.is_empty() {
        rep.check(name, true, ok_detail);
    } else {
        rep.check(name, false, problems.join("; "));
    }
}

/// Runs the consistency checks of a divisorial certificate and evaluates `S`
/// and `beta`.
pub fn verify_divisorial(cert: &DivisorialCertificate) -> InvariantReport {
    let mut rep = InvariantReport::new(
        &cert.id,
        &cert.family,
        &cert.center,
        "divisorial",
        cert.status.clone(),
    );
    let dims = dimension_problems(cert);
    let dims_ok = dims.is_empty();
    record(&mut rep, "dimensions", dims, "all classes match the basis");
    let tiling = tiling_problems(cert);
    let tiling_ok = tiling.is_empty();
    record(&mut rep, "tiling", tiling, "chambers tile [0, tau]");
    if !dims_ok || !tiling_ok {
        return rep;
    }

    let target = PolyClass::new(
        cert.pullback
            .coords
            .iter()
            .zip(&cert.divisor.coords)
            .map(|(a, d)| UniPoly::linear(a.clone(), -d))
            .collect(),
    );
    let d_poly = cert.divisor.to_poly();
    let mut identity = Vec::new();
    let mut nef = Vec::new();
    let mut orthogonal = Vec::new();
    let mut nonneg = Vec::new();
    let mut derivative = Vec::new();
    for ch in &cert.chambers {
        let mut sum = ch.positive.clone();
        for t in &ch.negative {
            sum = &sum + &PolyClass::from_scaled(&t.class, &t.coefficient);
        }
        if sum != target {
            identity.push(format!("P + N differs from pullback - uD on {}", interval(ch)));
        }
        for curve in &ch.geometry.test_curves {
            let deg = ch.positive.dot(&curve.functional);
            if sign_on_interval(&deg, &ch.u_lo, &ch.u_hi) != IntervalSign::Nonnegative {
                nef.push(format!("P.{} = {} on {}", curve.name, deg, interval(ch)));
            }
        }
        let p = &ch.positive;
        for t in &ch.negative {
            let q = ch
                .geometry
                .triple_eval(p, p, &t.class.to_poly())
                .expect("validated dimensions");
            if !q.is_zero() {
                orthogonal.push(format!("P^2.{} = {} on {}", t.label, q, interval(ch)));
            }
            if sign_on_interval(&t.coefficient, &ch.u_lo, &ch.u_hi) != IntervalSign::Nonnegative {
                nonneg.push(format!("coefficient {} of {} on {}", t.coefficient, t.label, interval(ch)));
            }
        }
        let vol = chamber_volume(ch);
        let rhs = ch
            .geometry
            .triple_eval(p, p, &d_poly)
            .expect("validated dimensions")
            .scale(&int(-3));
        if vol.derivative() != rhs {
            derivative.push(format!(
                "d/du P^3 = {} but -3 P^2.D = {} on {}",
                vol.derivative(),
                rhs,
                interval(ch)
            ));
        }
    }
    record(&mut rep, "class-identity", identity, "P + N = pullback - uD on every chamber");
    record(&mut rep, "nef", nef, "P meets every test curve nonnegatively");
    record(&mut rep, "orthogonality", orthogonal, "P^2.N_i = 0 identically");
    record(&mut rep, "n-nonnegative", nonneg, "negative-part coefficients are nonnegative");
    record(&mut rep, "derivative-identity", derivative, "d/du P^3 = -3 P^2.D identically");

    let mut continuity = Vec::new();
    let mut vol_continuity = Vec::new();
    for w in cert.chambers.windows(2) {
        let u = &w[0].u_hi;
        if w[0].positive.eval(u) != w[1].positive.eval(u) {
            continuity.push(format!("P jumps at u = {u}"));
        }
        let (a, b) = (chamber_volume(&w[0]).eval(u), chamber_volume(&w[1]).eval(u));
        if a != b {
            vol_continuity.push(format!("volume jumps at u = {u}: {a} vs {b}"));
        }
    }
    record(&mut rep, "continuity", continuity, "P agrees at breakpoints");
    record(&mut rep, "volume-continuity", vol_continuity, "P^3 agrees at breakpoints");

    let normalizer = cert.normalizer();
    let first = &cert.chambers[0];
    let v0 = chamber_volume(first).eval(&first.u_lo);
    rep.check(
        "volume-at-zero",
        v0 == normalizer,
        format!("P(0)^3 = {v0}, pullback^3 = {normalizer}"),
    );
    let last = &cert.chambers[cert.chambers.len() - 1];
    let vt = chamber_volume(last).eval(&cert.tau);
    rep.check("volume-at-tau", vt.is_zero(), format!("P(tau)^3 = {vt}"));
    rep.check(
        "normalizer",
        normalizer.is_positive(),
        format!("pullback^3 = {normalizer}"),
    );
    if !normalizer.is_positive() {
        return rep;
    }

    let (s, beta) = eval_s_divisor(cert);
    let bound = bound_s_by_tau(&cert.tau);
    rep.check("tau-bound", s <= bound, format!("S = {s}, (3/4) tau = {bound}"));
    let recorded = &cert.log_discrepancy - &cert.expected_s;
    rep.check(
        "beta-record",
        recorded == cert.expected_beta,
        format!("A - expected S = {recorded}, expected beta = {}", cert.expected_beta),
    );
    rep.value("tau", cert.tau.clone());
    rep.value("S", s.clone());
    rep.value("beta", beta.clone());
    rep.value("tau_bound", bound);
    rep.value("vol", normalizer);
    rep.compare("S", &cert.expected_s, &s);
    rep.compare("beta", &cert.expected_beta, &beta);
    rep.verdict = if !rep.checks_pass() {
        Verdict::Invalid
    } else if beta.is_positive() {
        Verdict::BetaPositive
    } else if beta.is_zero() {
        Verdict::BetaZero
    } else {
        Verdict::BetaNegative
    };
    rep
}
