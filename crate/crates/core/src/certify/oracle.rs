//! Cross-check of flag certificates against the pointwise Zariski oracle at
//! deterministic pseudo-random interior points.
//!
//! Points are drawn as `u = u_lo + (u_hi - u_lo) n/q` and
//! `v = v_lo(u) + (v_hi(u) - v_lo(u)) m/r` with `2 <= q, r <= 97` and
//! `0 < n < q`, `0 < m < r`, so they lie strictly inside the chamber.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FlagCertificate;
use crate::exact::{int, Rational};
use crate::lattice::DivisorClass;
use crate::zariski::{zariski_at, ZariskiResult};

/// Default seed of the sampler.
pub const DEFAULT_SEED: u64 = 7;

/// Largest denominator used for sample fractions.
pub const MAX_DENOMINATOR: i64 = 97;

/// One disagreement between a certificate and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMismatch {
    pub certificate: String,
    pub u_chamber: usize,
    pub v_chamber: usize,
    pub u: Rational,
    pub v: Rational,
    pub declared: ZariskiResult,
    /// Oracle output, or its error message.
    pub oracle: Result<ZariskiResult, String>,
}

/// Result of sampling one certificate.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OracleOutcome {
    pub points: usize,
    /// Chambers of zero width in `v`, which contain no interior points.
    pub degenerate_chambers: usize,
    pub mismatches: Vec<OracleMismatch>,
}

fn fraction(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.random_range(2..=MAX_DENOMINATOR);
    let n = rng.random_range(1..q);
    Rational::new(n.into(), q.into())
}

/// FNV-1a, used to give each certificate its own reproducible stream.
fn stream_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Positive part and nonzero negative part declared by a v-chamber at a point,
/// ordered like the surface curve list.
fn declared_at(cert: &FlagCertificate, ui: usize, vi: usize, u: &Rational, v: &Rational) -> ZariskiResult {
    let vc = &cert.chambers[ui].v_chambers[vi];
    let mut negative = Vec::new();
    for curve in &cert.surface.curves {
        if let Some(t) = vc.negative.iter().find(|t| t.curve == curve.name) {
            let c = t.coefficient.eval(u, v);
            if c != int(0) {
                negative.push((curve.name.clone(), c));
            }
        }
    }
    ZariskiResult {
        positive: vc.positive.eval(u, v),
        negative,
    }
}

/// Samples `samples` interior points per v-chamber and compares the declared
/// decomposition with [`zariski_at`] of `P(u)|_S - v C`.
pub fn check_flag_oracle(cert: &FlagCertificate, samples: usize, seed: u64) -> OracleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream_id(&cert.id));
    let mut out = OracleOutcome::default();
    for (ui, fc) in cert.chambers.iter().enumerate() {
        let Some(bc) = cert.base.chamber_containing(&fc.u_lo, &fc.u_hi) else {
            continue;
        };
        let pres = cert.restriction.apply_poly(&bc.positive);
        for (vi, vc) in fc.v_chambers.iter().enumerate() {
            let degenerate = (&vc.v_hi - &vc.v_lo).is_zero();
            if degenerate {
                out.degenerate_chambers += 1;
                continue;
            }
            for _ in 0..samples {
                let u = &fc.u_lo + (&fc.u_hi - &fc.u_lo) * fraction(&mut rng);
                let (lo, hi) = (vc.v_lo.eval(&u), vc.v_hi.eval(&u));
                let v = &lo + (&hi - &lo) * fraction(&mut rng);
                let d: DivisorClass = &pres.eval(&u) - &cert.curve.scale(&v);
                let declared = declared_at(cert, ui, vi, &u, &v);
                let oracle = zariski_at(&cert.surface, &d).map_err(|e| e.to_string());
                out.points += 1;
                if oracle.as_ref() != Ok(&declared) {
                    out.mismatches.push(OracleMismatch {
                        certificate: cert.id.clone(),
                        u_chamber: ui,
                        v_chamber: vi,
                        u,
                        v,
                        declared,
                        oracle,
                    });
                }
            }
        }
    }
    out
}
