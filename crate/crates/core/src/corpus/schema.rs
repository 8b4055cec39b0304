//! Serde schemas of the corpus files. Every struct rejects unknown fields.

use std::collections::BTreeMap;

use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub name: String,
    pub basis: Vec<String>,
    pub anticanonical: String,
    pub cube: String,
    #[serde(default)]
    pub triple: Option<Vec<String>>,
    #[serde(default)]
    pub classes: BTreeMap<String, String>,
    #[serde(default)]
    pub test_curves: Vec<TestCurveEntry>,
    #[serde(default)]
    pub derivation: Option<Derivation>,
    #[serde(default)]
    #[allow(dead_code)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestCurveEntry {
    pub name: String,
    pub functional: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derivation {
    pub base: String,
    pub steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Step {
    Curve {
        exceptional: String,
        genus: i64,
        degrees: String,
        canonical: String,
    },
    Point {
        exceptional: String,
    },
    Flop {
        curve: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<String>,
    pub cone_complete: bool,
    #[serde(default)]
    pub classes: BTreeMap<String, String>,
    pub curves: Vec<CurveEntry>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionEntry>,
    #[serde(default)]
    #[allow(dead_code)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub name: String,
    pub class: String,
    #[serde(default)]
    pub zero: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionEntry {
    pub geometry: String,
    pub surface_class: String,
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CertFile {
    Divisorial(DivisorialEntry),
    Flag(FlagEntry),
    UpperBound(UpperBoundEntry),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorialEntry {
    pub id: String,
    pub center: String,
    pub geometry: String,
    pub divisor: String,
    #[serde(default = "one")]
    pub log_discrepancy: String,
    pub tau: String,
    #[serde(default)]
    pub pullback: Option<String>,
    #[serde(rename = "expected_S")]
    pub expected_s: String,
    pub expected_beta: String,
    #[serde(default)]
    pub status: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
    pub chambers: Vec<UChamberEntry>,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UChamberEntry {
    pub u: [String; 2],
    #[serde(default)]
    pub geometry: Option<String>,
    pub positive: String,
    #[serde(default)]
    pub negative: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagEntry {
    pub id: String,
    pub center: String,
    pub base: String,
    pub surface: String,
    pub curve: String,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(rename = "expected_S_WC")]
    pub expected_s_wc: String,
    #[serde(default, rename = "expected_F_P")]
    pub expected_f_p: Option<String>,
    #[serde(default, rename = "expected_S_WP")]
    pub expected_s_wp: Option<String>,
    #[serde(default)]
    pub expected_delta: Option<String>,
    #[serde(default)]
    pub status: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
    pub chambers: Vec<FlagChamberEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagChamberEntry {
    pub u: [String; 2],
    #[serde(default = "zero")]
    pub d: String,
    pub t: String,
    #[serde(default)]
    pub nprime: BTreeMap<String, String>,
    pub v: Vec<VChamberEntry>,
}

fn zero() -> String {
    "0".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VChamberEntry {
    pub v: [String; 2],
    pub positive: String,
    #[serde(default)]
    pub negative: BTreeMap<String, String>,
    #[serde(default = "zero")]
    pub ordp: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpperBoundEntry {
    pub id: String,
    pub center: String,
    pub geometry: String,
    pub divisor: String,
    #[serde(default = "one")]
    pub log_discrepancy: String,
    #[serde(default)]
    pub pullback: Option<String>,
    pub nef_interval: [String; 2],
    #[serde(default)]
    pub expected_nef_part: Option<String>,
    #[serde(default)]
    pub expected_tail: Option<String>,
    pub expected_bound: String,
    pub claimed_beta_lower: String,
    #[serde(default)]
    #[allow(dead_code)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScopeFile {
    pub family: String,
    #[serde(default)]
    #[allow(dead_code)]
    pub note: Option<String>,
    pub centers: Vec<CenterEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterEntry {
    pub name: String,
    #[serde(default)]
    pub certificate: Option<String>,
    #[serde(default)]
    pub covered_by: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettledFile {
    pub family: Vec<SettledEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettledEntry {
    pub id: String,
    pub reason: String,
}
