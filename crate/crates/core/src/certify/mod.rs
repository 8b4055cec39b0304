//! Certificates and their verification.
//!
//! A divisorial certificate records the piecewise decomposition
//! `pullback - u D = P(u) + N(u)` on `[0, tau]` and yields
//! `S(D) = 1/vol * int_0^tau P(u)^3 du` and `beta = A - S`.
//!
//! A flag certificate refines a divisorial one along a surface `S` and a curve
//! `C in S`, recording `P(u)|_S - v C = P(u, v) + N(u, v)` chamber by chamber,
//! and yields
//!
//! * `S(W; C) = 3/vol * [ int d(u) P(u,0)^2 du + int int P(u,v)^2 dv du ]`,
//! * `F_P = 6/vol * int int (P(u,v).C) ord_P(u,v) dv du`,
//! * `S(W; P) = 3/vol * int int (P(u,v).C)^2 dv du + F_P`,
//!
//! with the local bound `delta >= min 1/S` over the available values.
//!
//! An upper-bound certificate bounds `S(D)` from above using a nef interval
//! and the monotonicity of the volume on the remaining interval.

mod divisorial;
mod flag;
pub mod oracle;
mod upper;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::exact::{Rational, UniPoly};
use crate::lattice::{AffineClass, DivisorClass, PolyClass, RestrictionMap, SurfaceGeometry, ThreefoldGeometry};
use crate::exact::AffineUV;

pub use divisorial::{eval_s_divisor, verify_divisorial};
pub use flag::{delta_bound, eval_f_p, eval_s_curve, eval_s_point, verify_flag};
pub use upper::verify_upper_bound;

/// Whether a certificate's expected values are established or disputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Established,
    /// The recorded expected values disagree with an independent recomputation;
    /// the note explains the disagreement.
    Disputed { note: String },
}

/// One negative-part component `coefficient(u) * class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NTerm {
    pub label: String,
    pub class: DivisorClass,
    pub coefficient: UniPoly,
}

/// Decomposition data on one interval of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    /// Model on which the decomposition lives (the base geometry, or a flop of it).
    pub geometry: Arc<ThreefoldGeometry>,
    pub positive: PolyClass,
    pub negative: Vec<NTerm>,
}

/// Decomposition of `pullback - u D` on `[0, tau]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialCertificate {
    pub id: String,
    pub family: String,
    /// Name of the divisor over the Fano threefold.
    pub center: String,
    pub geometry: Arc<ThreefoldGeometry>,
    pub divisor: DivisorClass,
    pub log_discrepancy: Rational,
    pub tau: Rational,
    /// Pullback of the anticanonical class of the Fano threefold.
    pub pullback: DivisorClass,
    pub chambers: Vec<UChamber>,
    pub expected_s: Rational,
    pub expected_beta: Rational,
    pub status: Status,
}

impl DivisorialCertificate {
    /// `pullback^3`, the normaliser of every integral.
    pub fn normalizer(&self) -> Rational {
        self.geometry
            .triple_const(&self.pullback, &self.pullback, &self.pullback)
    }

    /// `P(u)^3` on each chamber, in chamber order.
    pub fn chamber_volumes(&self) -> Vec<UniPoly> {
        self.chambers
            .iter()
            .map(|ch| {
                ch.geometry
                    .volume_poly(&ch.positive)
                    .expect("dimensions are validated on load")
            })
            .collect()
    }

    /// Chamber containing `[lo, hi]`, if any.
    pub fn chamber_containing(&self, lo: &Rational, hi: &Rational) -> Option<&UChamber> {
        self.chambers
            .iter()
            .find(|c| &c.u_lo <= lo && hi <= &c.u_hi)
    }
}

/// A negative-part curve on the surface with affine coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceNTerm {
    pub curve: String,
    pub coefficient: AffineUV,
}

/// Decomposition data on `u_lo <= u <= u_hi`, `v_lo(u) <= v <= v_hi(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VChamber {
    pub v_lo: UniPoly,
    pub v_hi: UniPoly,
    pub positive: AffineClass,
    pub negative: Vec<SurfaceNTerm>,
    /// Multiplicity integrand `ord_P(N'(u)|_C + N(u,v)|_C)`.
    pub ordp: AffineUV,
}

/// A component of `N(u)|_S` other than the flag curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPrimeTerm {
    pub label: String,
    pub class: DivisorClass,
    pub coefficient: UniPoly,
}

/// Flag data on one interval of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagUChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    /// Coefficient of the flag curve in `N(u)|_S`.
    pub d: UniPoly,
    pub nprime: Vec<NPrimeTerm>,
    /// Pseudo-effective threshold of `P(u)|_S - v C`.
    pub t: UniPoly,
    pub v_chambers: Vec<VChamber>,
}

/// Expected values of a flag certificate.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FlagExpected {
    pub s_wc: Rational,
    pub f_p: Option<Rational>,
    pub s_wp: Option<Rational>,
    pub delta: Option<Rational>,
}

/// Flag `P in C in S` over a divisorial certificate for `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCertificate {
    pub id: String,
    pub family: String,
    pub center: String,
    pub base: Arc<DivisorialCertificate>,
    pub surface: Arc<SurfaceGeometry>,
    pub restriction: RestrictionMap,
    pub curve_label: String,
    pub curve: DivisorClass,
    /// Label of the point when point data (`ord_P`) is part of the certificate.
    pub point: Option<String>,
    pub chambers: Vec<FlagUChamber>,
    pub expected: FlagExpected,
    /// Own status when disputed, otherwise the status of the base certificate.
    pub status: Status,
}

/// Upper bound for `S(D)` from a nef interval `[0, nef_hi]` plus a tail
/// estimate `vol(u) <= vol(nef_hi)` on `[nef_hi, tau_bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBoundCertificate {
    pub id: String,
    pub family: String,
    pub center: String,
    pub geometry: Arc<ThreefoldGeometry>,
    pub divisor: DivisorClass,
    pub log_discrepancy: Rational,
    pub pullback: DivisorClass,
    pub nef_hi: Rational,
    pub expected_nef_part: Option<Rational>,
    pub expected_tail: Option<Rational>,
    pub expected_bound: Rational,
    /// Claimed lower bound on `beta`.
    pub claimed_beta_lower: Rational,
}

impl UpperBoundCertificate {
    /// `pullback - u D` as a class polynomial in `u`.
    pub fn moving_class(&self) -> PolyClass {
        PolyClass::new(
            self.pullback
                .coords
                .iter()
                .zip(&self.divisor.coords)
                .map(|(a, d)| UniPoly::linear(a.clone(), -d))
                .collect(),
        )
    }

    /// `(pullback - u D)^3`, the volume on the nef interval; `None` when the
    /// classes do not match the basis.
    pub fn nef_volume(&self) -> Option<UniPoly> {
        self.geometry.volume_poly(&self.moving_class()).ok()
    }
}

/// Any certificate in the corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Divisorial(Arc<DivisorialCertificate>),
    Flag(FlagCertificate),
    UpperBound(UpperBoundCertificate),
}

impl Certificate {
    pub fn id(&self) -> &str {
        match self {
            Certificate::Divisorial(c) => &c.id,
            Certificate::Flag(c) => &c.id,
            Certificate::UpperBound(c) => &c.id,
        }
    }

    pub fn family(&self) -> &str {
        match self {
            Certificate::Divisorial(c) => &c.family,
            Certificate::Flag(c) => &c.family,
            Certificate::UpperBound(c) => &c.family,
        }
    }

    pub fn center(&self) -> &str {
        match self {
            Certificate::Divisorial(c) => &c.center,
            Certificate::Flag(c) => &c.center,
            Certificate::UpperBound(c) => &c.center,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Divisorial(_) => "divisorial",
            Certificate::Flag(_) => "flag",
            Certificate::UpperBound(_) => "upper-bound",
        }
    }

    /// Runs every check and evaluation.
    pub fn verify(&self) -> InvariantReport {
        match self {
            Certificate::Divisorial(c) => verify_divisorial(c),
            Certificate::Flag(c) => verify_flag(c),
            Certificate::UpperBound(c) => verify_upper_bound(c),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Comparison of an expected value with the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub expected: Rational,
    pub computed: Rational,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// Geometric conclusion drawn from the computed values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `beta > 0`.
    BetaPositive,
    /// `beta = 0`.
    BetaZero,
    /// `beta < 0`: the divisor destabilises.
    BetaNegative,
    /// Every available `S` value is `< 1`, so the local `delta` bound exceeds one.
    DeltaAboveOne,
    /// The largest `S` value equals `1`; positivity of `beta` follows from the
    /// strict form of the flag criterion.
    PassByStrictRemark,
    /// Some `S` value exceeds `1`; the flag does not conclude.
    Inconclusive,
    /// Upper bound on `S` gives `beta >= bound > 0`.
    BetaBounded,
    /// The certificate failed verification.
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BetaPositive => "beta>0",
            Verdict::BetaZero => "beta=0",
            Verdict::BetaNegative => "beta<0",
            Verdict::DeltaAboveOne => "delta>1",
            Verdict::PassByStrictRemark => "pass-by-strict-remark",
            Verdict::Inconclusive => "inconclusive",
            Verdict::BetaBounded => "beta-bounded",
            Verdict::Invalid => "invalid",
        })
    }
}

/// Exact outputs and check verdicts for one certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub id: String,
    pub family: String,
    pub center: String,
    pub kind: &'static str,
    /// Computed values in a fixed per-kind order (`tau`, `S`, `beta`, ...).
    pub values: Vec<(String, Rational)>,
    pub checks: Vec<Check>,
    pub comparisons: Vec<Comparison>,
    pub verdict: Verdict,
    pub status: Status,
}

impl InvariantReport {
    fn new(id: &str, family: &str, center: &str, kind: &'static str, status: Status) -> Self {
        InvariantReport {
            id: id.to_string(),
            family: family.to_string(),
            center: center.to_string(),
            kind,
            values: Vec::new(),
            checks: Vec::new(),
            comparisons: Vec::new(),
            verdict: Verdict::Invalid,
            status,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn value(&mut self, name: &str, q: Rational) {
        self.values.push((name.to_string(), q));
    }

    fn compare(&mut self, name: &str, expected: &Rational, computed: &Rational) {
        self.comparisons.push(Comparison {
            name: name.to_string(),
            expected: expected.clone(),
            computed: computed.clone(),
        });
    }

    /// Computed value by name.
    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }

    /// `true` iff every structural check passed.
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// `true` iff every expected value was reproduced.
    pub fn values_match(&self) -> bool {
        self.comparisons.iter().all(Comparison::matches)
    }

    /// A report is valid when all checks pass and all expected values match.
    pub fn is_valid(&self) -> bool {
        self.checks_pass() && self.values_match()
    }

    /// `true` when this report should make a corpus run fail: an invalid
    /// report whose discrepancy is not a documented dispute.
    pub fn is_failure(&self) -> bool {
        if !self.checks_pass() {
            return true;
        }
        !self.values_match() && matches!(self.status, Status::Established)
    }

    /// First failed check or mismatching value, for error messages.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return Some(format!("check {} failed: {}", c.name, c.detail));
        }
        self.comparisons.iter().find(|c| !c.matches()).map(|c| {
            format!(
                "{} expected {} computed {}",
                c.name, c.expected, c.computed
            )
        })
    }
}

/// `min 1/S` over the given positive values; `None` if a value is not positive.
pub fn min_reciprocal(values: &[Rational]) -> Option<Rational> {
    values
        .iter()
        .map(|s| s.is_positive().then(|| s.recip()))
        .collect::<Option<Vec<_>>>()?
        .into_iter()
        .min()
}

/// The bound `S <= n/(n+1) tau` for threefolds, `(3/4) tau`.
pub fn bound_s_by_tau(tau: &Rational) -> Rational {
    tau * Rational::new(3.into(), 4.into())
}

/// Verdict from the `S` values of a flag (all `< 1`, maximum `= 1`, or some `> 1`).
fn flag_verdict(values: &[Rational]) -> Verdict {
    let one = Rational::one();
    let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    if max < one {
        Verdict::DeltaAboveOne
    } else if max == one {
        Verdict::PassByStrictRemark
    } else {
        Verdict::Inconclusive
    }
}
