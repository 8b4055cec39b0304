//! Upper-bound certificates: `S(D)` bounded from a nef interval and a tail
//! estimate.
//!
//! On `[0, a]` the class `P(u) = pullback - u D` is nef and contributes
//! exactly. The class `M = P(a)` is nef, so `(pullback - u D).M^2 >= 0` for
//! every effective `pullback - u D`; this linear condition gives
//! `tau <= tau_bound`. On `[a, tau]` the volume is non-increasing, hence at most
//! `vol(a)`, which bounds the tail by `(tau_bound - a) vol(a)`.

use num_traits::{Signed, Zero};

use super::{InvariantReport, Status, UpperBoundCertificate, Verdict};
use crate::exact::{integrate_uni, sign_on_interval, IntervalSign, Rational};

fn record(rep: &mut InvariantReport, name: &str, problems: Vec<String>, ok_detail: &str) {
    if problems.is_empty() {
        rep.check(name, true, ok_detail);
    } else {
        rep.check(name, false, problems.join("; "));
    }
}

/// Runs the checks of an upper-bound certificate and evaluates the bound.
pub fn verify_upper_bound(cert: &UpperBoundCertificate) -> InvariantReport {
    let mut rep = InvariantReport::new(&cert.id, &cert.family, &cert.center, "upper-bound", Status::Established);
    let g = &cert.geometry;
    let n = g.rank();
    if cert.divisor.len() != n || cert.pullback.len() != n {
        rep.check("dimensions", false, "divisor or pullback has wrong length");
        return rep;
    }
    rep.check("dimensions", true, "all classes match the basis");
    let zero = Rational::zero();
    if cert.nef_hi <= zero {
        rep.check("nef-interval", false, format!("nef interval [0, {}] is empty", cert.nef_hi));
        return rep;
    }
    let p = cert.moving_class();
    let mut nef = Vec::new();
    for curve in &g.test_curves {
        let deg = p.dot(&curve.functional);
        if sign_on_interval(&deg, &zero, &cert.nef_hi) != IntervalSign::Nonnegative {
            nef.push(format!("P.{} = {}", curve.name, deg));
        }
    }
    record(&mut rep, "nef", nef, "pullback - uD is nef on the nef interval");
    let vol = cert.nef_volume().expect("validated dimensions");
    let dvol = vol.derivative();
    rep.check(
        "volume-decreasing",
        dvol.is_zero() || sign_on_interval(&dvol, &zero, &cert.nef_hi) == IntervalSign::Nonpositive,
        format!("d/du vol = {dvol}"),
    );

    let m = p.eval(&cert.nef_hi).to_poly();
    let witness = g.triple_eval(&p, &m, &m).expect("validated dimensions");
    let slope = witness.coeff(1);
    let tau_bound = if witness.degree() == Some(1) && slope.is_negative() {
        Some(-witness.coeff(0) / slope)
    } else {
        None
    };
    let Some(tau_bound) = tau_bound else {
        rep.check("tau-witness", false, format!("(pullback - uD).M^2 = {witness} gives no bound"));
        return rep;
    };
    rep.check(
        "tau-witness",
        tau_bound >= cert.nef_hi,
        format!("(pullback - uD).M^2 = {witness}, tau <= {tau_bound}"),
    );
    let normalizer = g.triple_const(&cert.pullback, &cert.pullback, &cert.pullback);
    if !normalizer.is_positive() {
        rep.check("normalizer", false, format!("pullback^3 = {normalizer}"));
        return rep;
    }
    let nef_part = integrate_uni(&vol, &zero, &cert.nef_hi) / &normalizer;
    let tail = (&tau_bound - &cert.nef_hi) * vol.eval(&cert.nef_hi) / &normalizer;
    let bound = &nef_part + &tail;
    let beta_lower = &cert.log_discrepancy - &bound;
    rep.check(
        "claim",
        beta_lower >= cert.claimed_beta_lower,
        format!("A - bound = {beta_lower}, claimed beta >= {}", cert.claimed_beta_lower),
    );
    rep.value("tau_bound", tau_bound);
    rep.value("nef_part", nef_part.clone());
    rep.value("tail", tail.clone());
    rep.value("S_bound", bound.clone());
    rep.value("beta_lower", beta_lower.clone());
    rep.value("vol", normalizer);
    if let Some(e) = &cert.expected_nef_part {
        rep.compare("nef_part", e, &nef_part);
    }
    if let Some(e) = &cert.expected_tail {
        rep.compare("tail", e, &tail);
    }
    rep.compare("S_bound", &cert.expected_bound, &bound);
    rep.verdict = if !rep.checks_pass() {
        Verdict::Invalid
    } else if beta_lower.is_positive() {
        Verdict::BetaBounded
    } else {
        Verdict::Inconclusive
    };
    rep
}
