//! Loading of the certificate corpus.
//!
//! Layout: `<root>/<family>/geometry/*.txt`, `<root>/<family>/surfaces/*.txt`,
//! `<root>/<family>/certs/*.txt`, `<root>/<family>/scope.txt`, and an optional
//! `<root>/settled.txt` listing families settled by external results. Files are
//! TOML documents; the field-by-field format is described in `docs/format.md`.

mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::certify::{
    Certificate, DivisorialCertificate, FlagCertificate, FlagExpected, FlagUChamber, NPrimeTerm, NTerm, Status,
    SurfaceNTerm, UChamber, UpperBoundCertificate, VChamber,
};
use crate::exact::{parse_rational, Rational};
use crate::lattice::{
    blowup_along_curve, blowup_at_point, flop, parse_affine, parse_class_expr, parse_functional, parse_gram_entry,
    parse_triple_entry, parse_upoly, CurveCenter, DivisorClass, RestrictionMap, SurfaceCurve, SurfaceGeometry,
    TestCurve, ThreefoldGeometry,
};
use schema::{CertFile, GeometryFile, ScopeFile, SettledFile, Step, SurfaceFile};

/// Failure to load the corpus.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
    #[error("{path}: dangling reference: {msg}")]
    Reference { path: PathBuf, msg: String },
    #[error("{path}: self-check failed for geometry {geometry}: {msg}")]
    SelfCheck {
        path: PathBuf,
        geometry: String,
        msg: String,
    },
}

/// How a scope center is covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Certificate(String),
    /// Covered by the certificate of another center of the same scope.
    CoveredBy(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScopeCenter {
    pub name: String,
    pub coverage: Coverage,
    pub note: Option<String>,
}

/// The invariant centers a family's argument must cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyScope {
    pub family: String,
    pub note: Option<String>,
    pub centers: Vec<ScopeCenter>,
}

impl FamilyScope {
    /// Certificate ultimately covering a center, following cross-references.
    pub fn covering_certificate(&self, center: &str) -> Option<&str> {
        let mut seen = BTreeSet::new();
        let mut name = center;
        loop {
            if !seen.insert(name) {
                return None;
            }
            let c = self.centers.iter().find(|c| c.name == name)?;
            match &c.coverage {
                Coverage::Certificate(id) => return Some(id),
                Coverage::CoveredBy(other) => name = other,
            }
        }
    }

    /// Centers whose coverage does not resolve to a certificate in `ids`.
    pub fn uncovered<'a>(&'a self, ids: &BTreeSet<&str>) -> Vec<&'a str> {
        self.centers
            .iter()
            .filter(|c| {
                self.covering_certificate(&c.name)
                    .is_none_or(|id| !ids.contains(id))
            })
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// A family settled by an external result, carrying no certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SettledFamily {
    pub id: String,
    pub reason: String,
}

/// A geometry whose table was derived by blowups and flops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationRecord {
    pub geometry: String,
    pub base: String,
    pub steps: usize,
    /// `true` when a printed table was present and matched the derived one.
    pub matched_printed_table: bool,
}

/// A restriction map shipped with a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShippedRestriction {
    pub surface: Arc<SurfaceGeometry>,
    pub geometry: Arc<ThreefoldGeometry>,
    pub map: RestrictionMap,
}

/// All data of one family directory.
#[derive(Clone, Debug, Default)]
pub struct Family {
    pub id: String,
    pub geometries: Vec<Arc<ThreefoldGeometry>>,
    pub surfaces: Vec<Arc<SurfaceGeometry>>,
    pub restrictions: Vec<ShippedRestriction>,
    pub derivations: Vec<DerivationRecord>,
    pub certificates: Vec<Certificate>,
    pub scope: Option<FamilyScope>,
    /// Named classes and curve classes usable in expressions on each surface.
    pub surface_names: BTreeMap<String, BTreeMap<String, DivisorClass>>,
}

impl Family {
    pub fn geometry(&self, name: &str) -> Option<&Arc<ThreefoldGeometry>> {
        self.geometries.iter().find(|g| g.name == name)
    }

    pub fn surface(&self, name: &str) -> Option<&Arc<SurfaceGeometry>> {
        self.surfaces.iter().find(|s| s.name == name)
    }

    pub fn certificate(&self, id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id() == id)
    }
}

/// The loaded corpus, in deterministic (sorted directory and file) order.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub families: Vec<Family>,
    pub settled: Vec<SettledFamily>,
}

impl Corpus {
    pub fn family(&self, id: &str) -> Option<&Family> {
        self.families.iter().find(|f| f.id == id)
    }

    /// Every certificate with its family, in corpus order.
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.families.iter().flat_map(|f| f.certificates.iter())
    }

    pub fn geometry_count(&self) -> usize {
        self.families.iter().map(|f| f.geometries.len()).sum()
    }

    pub fn surface_count(&self) -> usize {
        self.families.iter().map(|f| f.surfaces.len()).sum()
    }

    pub fn scope_count(&self) -> usize {
        self.families.iter().filter(|f| f.scope.is_some()).count()
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, LoadError> {
    let text = read(path)?;
    toml::from_str(&text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(1);
        LoadError::Parse {
            path: path.to_path_buf(),
            line,
            msg: e.message().to_string(),
        }
    })
}

/// `*.txt` files of a directory, sorted by name (missing directory = none).
fn txt_files(dir: &Path) -> Result<Vec<PathBuf>, LoadError> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let entries = fs::read_dir(dir).map_err(|source| LoadError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut out = Vec::new();
    for e in entries {
        let e = e.map_err(|source| LoadError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let p = e.path();
        if p.extension().is_some_and(|x| x == "txt") && p.is_file() {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

struct Ctx<'a> {
    path: &'a Path,
}

impl Ctx<'_> {
    fn invalid(&self, msg: impl std::fmt::Display) -> LoadError {
        LoadError::Invalid {
            path: self.path.to_path_buf(),
            msg: msg.to_string(),
        }
    }

    fn reference(&self, msg: impl Into<String>) -> LoadError {
        LoadError::Reference {
            path: self.path.to_path_buf(),
            msg: msg.into(),
        }
    }

    fn rational(&self, s: &str) -> Result<Rational, LoadError> {
        parse_rational(s.trim()).map_err(|e| self.invalid(format!("`{s}`: {e}")))
    }

    fn class(
        &self,
        s: &str,
        basis: &[String],
        named: &BTreeMap<String, DivisorClass>,
    ) -> Result<DivisorClass, LoadError> {
        parse_class_expr(s)
            .and_then(|e| e.to_divisor_class(s, basis, named))
            .map_err(|e| self.invalid(e))
    }

    fn functional(&self, s: &str, basis: &[String]) -> Result<Vec<Rational>, LoadError> {
        let mut out = vec![Rational::zero(); basis.len()];
        for (name, q) in parse_functional(s).map_err(|e| self.invalid(e))? {
            let i = basis
                .iter()
                .position(|b| *b == name)
                .ok_or_else(|| self.invalid(format!("`{name}` is not a basis divisor in `{s}`")))?;
            out[i] = q;
        }
        Ok(out)
    }
}

/// Loads every family under `root`.
pub fn load_corpus(root: impl AsRef<Path>) -> Result<Corpus, LoadError> {
    let root = root.as_ref();
    let entries = fs::read_dir(root).map_err(|source| LoadError::Io {
        path: root.to_path_buf(),
        source,
    })?;
    let mut dirs = Vec::new();
    for e in entries {
        let e = e.map_err(|source| LoadError::Io {
            path: root.to_path_buf(),
            source,
        })?;
        if e.path().is_dir() {
            dirs.push(e.path());
        }
    }
    dirs.sort();
    let mut corpus = Corpus::default();
    for dir in dirs {
        corpus.families.push(load_family(&dir)?);
    }
    let settled = root.join("settled.txt");
    if settled.is_file() {
        let f: SettledFile = parse_toml(&settled)?;
        corpus.settled = f
            .family
            .into_iter()
            .map(|e| SettledFamily {
                id: e.id,
                reason: e.reason,
            })
            .collect();
    }
    Ok(corpus)
}

fn load_family(dir: &Path) -> Result<Family, LoadError> {
    let id = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut fam = Family {
        id: id.clone(),
        ..Family::default()
    };
    load_geometries(&mut fam, &dir.join("geometry"))?;
    load_surfaces(&mut fam, &dir.join("surfaces"))?;
    load_certificates(&mut fam, &dir.join("certs"))?;
    let scope = dir.join("scope.txt");
    if scope.is_file() {
        fam.scope = Some(load_scope(&fam, &scope)?);
    }
    Ok(fam)
}

fn load_geometries(fam: &mut Family, dir: &Path) -> Result<(), LoadError> {
    let mut pending: Vec<(PathBuf, GeometryFile)> = Vec::new();
    for path in txt_files(dir)? {
        let g: GeometryFile = parse_toml(&path)?;
        pending.push((path, g));
    }
    let mut seen = BTreeSet::new();
    for (path, g) in &pending {
        if !seen.insert(g.name.clone()) {
            return Err(Ctx { path }.invalid(format!("duplicate geometry name {}", g.name)));
        }
    }
    // Resolve in dependency order of derivation bases.
    while !pending.is_empty() {
        let ready = pending.iter().position(|(_, g)| {
            g.derivation
                .as_ref()
                .is_none_or(|d| fam.geometry(&d.base).is_some())
        });
        let Some(k) = ready else {
            let (path, g) = &pending[0];
            let base = g.derivation.as_ref().map(|d| d.base.clone()).unwrap_or_default();
            return Err(Ctx { path }.reference(format!(
                "derivation base {base} of {} is missing or cyclic",
                g.name
            )));
        };
        let (path, g) = pending.remove(k);
        let (geometry, record) = build_geometry(fam, &path, g)?;
        if let Some(r) = record {
            fam.derivations.push(r);
        }
        fam.geometries.push(Arc::new(geometry));
    }
    Ok(())
}

fn derive(
    fam: &Family,
    ctx: &Ctx,
    name: &str,
    d: &schema::Derivation,
) -> Result<ThreefoldGeometry, LoadError> {
    let mut g: ThreefoldGeometry = fam.geometry(&d.base).expect("dependency resolved").as_ref().clone();
    let self_check = |e: crate::lattice::LatticeError| LoadError::SelfCheck {
        path: ctx.path.to_path_buf(),
        geometry: name.to_string(),
        msg: e.to_string(),
    };
    for (k, step) in d.steps.iter().enumerate() {
        let step_name = format!("{name}#{}", k + 1);
        g = match step {
            Step::Curve {
                exceptional,
                genus,
                degrees,
                canonical,
            } => {
                let center = CurveCenter {
                    genus: *genus,
                    degrees: ctx.functional(degrees, &g.basis)?,
                    canonical_dot: ctx.rational(canonical)?,
                };
                blowup_along_curve(&g, step_name, exceptional.clone(), &center).map_err(self_check)?
            }
            Step::Point { exceptional } => {
                blowup_at_point(&g, step_name, exceptional.clone()).map_err(self_check)?
            }
            Step::Flop { curve } => {
                let gamma = ctx.functional(curve, &g.basis)?;
                flop(&g, step_name, &gamma).map_err(self_check)?
            }
        };
    }
    Ok(g)
}

fn build_geometry(
    fam: &Family,
    path: &Path,
    g: GeometryFile,
) -> Result<(ThreefoldGeometry, Option<DerivationRecord>), LoadError> {
    let ctx = Ctx { path };
    let basis = g.basis.clone();
    let index: BTreeMap<&str, usize> = basis.iter().enumerate().map(|(i, b)| (b.as_str(), i)).collect();
    if index.len() != basis.len() {
        return Err(ctx.invalid("repeated basis name"));
    }
    let mut classes = BTreeMap::new();
    for (name, expr) in &g.classes {
        if index.contains_key(name.as_str()) {
            return Err(ctx.invalid(format!("class {name} shadows a basis divisor")));
        }
        classes.insert(name.clone(), ctx.class(expr, &basis, &BTreeMap::new())?);
    }
    let anticanonical = ctx.class(&g.anticanonical, &basis, &classes)?;
    let cube = ctx.rational(&g.cube)?;

    let printed: Option<Vec<([usize; 3], Rational)>> = match &g.triple {
        None => None,
        Some(lines) => {
            let mut out = Vec::new();
            for line in lines {
                let (names, q) = parse_triple_entry(line).map_err(|e| ctx.invalid(e))?;
                let mut idx = [0usize; 3];
                for (slot, n) in idx.iter_mut().zip(&names) {
                    *slot = *index
                        .get(n.as_str())
                        .ok_or_else(|| ctx.invalid(format!("unknown divisor {n} in `{line}`")))?;
                }
                out.push((idx, q));
            }
            Some(out)
        }
    };

    let mut record = None;
    let entries = match &g.derivation {
        None => printed.ok_or_else(|| ctx.invalid("a geometry needs a triple table or a derivation"))?,
        Some(d) => {
            let derived = derive(fam, &ctx, &g.name, d)?;
            let mismatch = |msg: String| LoadError::SelfCheck {
                path: path.to_path_buf(),
                geometry: g.name.clone(),
                msg,
            };
            let mut derived_names: Vec<String> = derived.basis.clone();
            derived_names.sort();
            let mut names = basis.clone();
            names.sort();
            if derived_names != names {
                return Err(mismatch(format!("derived basis {:?} differs from {:?}", derived.basis, basis)));
            }
            for (i, b) in basis.iter().enumerate() {
                let j = derived.index_of(b).expect("same basis");
                if derived.anticanonical.coords[j] != anticanonical.coords[i] {
                    return Err(mismatch(format!("derived anticanonical class differs at {b}")));
                }
            }
            let derived_entries: Vec<([usize; 3], Rational)> = derived
                .entries()
                .map(|(k, v)| (k.map(|i| index[derived.basis[i].as_str()]), v.clone()))
                .collect();
            let matched = match printed {
                None => false,
                Some(p) => {
                    let probe = ThreefoldGeometry::new(
                        g.name.clone(),
                        basis.clone(),
                        p.clone(),
                        anticanonical.clone(),
                        Vec::new(),
                        cube.clone(),
                    )
                    .map_err(|e| mismatch(e.to_string()))?;
                    let dt = derived.named_table();
                    let pt = probe.named_table();
                    if dt != pt {
                        let diff: Vec<String> = dt
                            .keys()
                            .chain(pt.keys())
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .filter(|k| dt.get(*k) != pt.get(*k))
                            .map(|k| {
                                format!(
                                    "{}: derived {} printed {}",
                                    k.join("*"),
                                    dt.get(k).cloned().unwrap_or_default(),
                                    pt.get(k).cloned().unwrap_or_default()
                                )
                            })
                            .collect();
                        return Err(mismatch(format!("derived table differs: {}", diff.join(", "))));
                    }
                    true
                }
            };
            record = Some(DerivationRecord {
                geometry: g.name.clone(),
                base: d.base.clone(),
                steps: d.steps.len(),
                matched_printed_table: matched,
            });
            derived_entries
        }
    };
    let mut test_curves = Vec::new();
    for t in &g.test_curves {
        test_curves.push(TestCurve {
            name: t.name.clone(),
            functional: ctx.functional(&t.functional, &basis)?,
        });
    }
    let geometry = ThreefoldGeometry::new(g.name.clone(), basis, entries, anticanonical, test_curves, cube)
        .map_err(|e| LoadError::SelfCheck {
            path: path.to_path_buf(),
            geometry: g.name.clone(),
            msg: e.to_string(),
        })?
        .with_classes(classes);
    Ok((geometry, record))
}

/// Names usable in surface expressions: named classes, then curve names.
fn surface_names(s: &SurfaceGeometry, classes: &BTreeMap<String, DivisorClass>) -> BTreeMap<String, DivisorClass> {
    let mut named = classes.clone();
    for c in &s.curves {
        if !s.basis.contains(&c.name) {
            named.entry(c.name.clone()).or_insert_with(|| c.class.clone());
        }
    }
    named
}

fn load_surfaces(fam: &mut Family, dir: &Path) -> Result<(), LoadError> {
    let mut named_by_surface: BTreeMap<String, BTreeMap<String, DivisorClass>> = BTreeMap::new();
    for path in txt_files(dir)? {
        let ctx = Ctx { path: &path };
        let f: SurfaceFile = parse_toml(&path)?;
        if fam.surface(&f.name).is_some() {
            return Err(ctx.invalid(format!("duplicate surface name {}", f.name)));
        }
        let n = f.basis.len();
        let mut gram = vec![vec![Rational::zero(); n]; n];
        let mut set = BTreeSet::new();
        for line in &f.gram {
            let ([a, b], q) = parse_gram_entry(line).map_err(|e| ctx.invalid(e))?;
            let i = f.basis.iter().position(|x| *x == a);
            let j = f.basis.iter().position(|x| *x == b);
            let (Some(i), Some(j)) = (i, j) else {
                return Err(ctx.invalid(format!("unknown basis element in `{line}`")));
            };
            let key = (i.min(j), i.max(j));
            if !set.insert(key) && gram[i][j] != q {
                return Err(ctx.invalid(format!("conflicting Gram entry `{line}`")));
            }
            gram[i][j] = q.clone();
            gram[j][i] = q;
        }
        let mut classes = BTreeMap::new();
        for (name, expr) in &f.classes {
            classes.insert(name.clone(), ctx.class(expr, &f.basis, &BTreeMap::new())?);
        }
        let mut curves = Vec::new();
        for c in &f.curves {
            if curves.iter().any(|x: &SurfaceCurve| x.name == c.name) {
                return Err(ctx.invalid(format!("duplicate curve {}", c.name)));
            }
            curves.push(SurfaceCurve {
                name: c.name.clone(),
                class: ctx.class(&c.class, &f.basis, &classes)?,
                zero_curve: c.zero,
            });
        }
        let surface = Arc::new(
            SurfaceGeometry::new(f.name.clone(), f.basis.clone(), gram, curves, f.cone_complete)
                .map_err(|e| ctx.invalid(e))?,
        );
        let named = surface_names(&surface, &classes);
        for r in &f.restrictions {
            let g = fam
                .geometry(&r.geometry)
                .cloned()
                .ok_or_else(|| ctx.reference(format!("geometry {}", r.geometry)))?;
            let surface_class = ctx.class(&r.surface_class, &g.basis, &g.classes)?;
            let mut images = Vec::new();
            for b in &g.basis {
                let expr = r
                    .images
                    .get(b)
                    .ok_or_else(|| ctx.invalid(format!("restriction to {} lacks an image of {b}", f.name)))?;
                images.push(ctx.class(expr, &surface.basis, &named)?);
            }
            if let Some(extra) = r.images.keys().find(|k| !g.basis.contains(k)) {
                return Err(ctx.invalid(format!("image given for unknown divisor {extra}")));
            }
            fam.restrictions.push(ShippedRestriction {
                surface: surface.clone(),
                geometry: g,
                map: RestrictionMap {
                    images,
                    surface_class,
                },
            });
        }
        named_by_surface.insert(f.name.clone(), named);
        fam.surfaces.push(surface);
    }
    fam.surface_names = named_by_surface;
    Ok(())
}

fn status(ctx: &Ctx, status: Option<&str>, note: Option<&String>) -> Result<Status, LoadError> {
    match status {
        None | Some("established") => Ok(Status::Established),
        Some("disputed") => {
            let note = note.ok_or_else(|| ctx.invalid("a disputed certificate needs a note"))?;
            Ok(Status::Disputed { note: note.clone() })
        }
        Some(other) => Err(ctx.invalid(format!("unknown status {other}"))),
    }
}

fn load_certificates(fam: &mut Family, dir: &Path) -> Result<(), LoadError> {
    let mut files = Vec::new();
    for path in txt_files(dir)? {
        let c: CertFile = parse_toml(&path)?;
        files.push((path, c));
    }
    let mut ids = BTreeSet::new();
    for (path, c) in &files {
        let id = match c {
            CertFile::Divisorial(e) => &e.id,
            CertFile::Flag(e) => &e.id,
            CertFile::UpperBound(e) => &e.id,
        };
        if !ids.insert(id.clone()) {
            return Err(Ctx { path }.invalid(format!("duplicate certificate id {id}")));
        }
    }
    let mut divisorial: BTreeMap<String, Arc<DivisorialCertificate>> = BTreeMap::new();
    for (path, c) in &files {
        if let CertFile::Divisorial(e) = c {
            let cert = Arc::new(build_divisorial(fam, path, e)?);
            divisorial.insert(e.id.clone(), cert);
        }
    }
    let named = fam.surface_names.clone();
    for (path, c) in &files {
        let cert = match c {
            CertFile::Divisorial(e) => Certificate::Divisorial(divisorial[&e.id].clone()),
            CertFile::Flag(e) => Certificate::Flag(build_flag(fam, path, e, &divisorial, &named)?),
            CertFile::UpperBound(e) => Certificate::UpperBound(build_upper(fam, path, e)?),
        };
        fam.certificates.push(cert);
    }
    Ok(())
}

fn build_divisorial(
    fam: &Family,
    path: &Path,
    e: &schema::DivisorialEntry,
) -> Result<DivisorialCertificate, LoadError> {
    let ctx = Ctx { path };
    let g = fam
        .geometry(&e.geometry)
        .cloned()
        .ok_or_else(|| ctx.reference(format!("geometry {}", e.geometry)))?;
    let divisor = ctx.class(&e.divisor, &g.basis, &g.classes)?;
    let pullback = match &e.pullback {
        Some(p) => ctx.class(p, &g.basis, &g.classes)?,
        None => g.anticanonical.clone(),
    };
    let mut chambers = Vec::new();
    for ch in &e.chambers {
        let model = match &ch.geometry {
            None => g.clone(),
            Some(name) => fam
                .geometry(name)
                .cloned()
                .ok_or_else(|| ctx.reference(format!("geometry {name}")))?,
        };
        let mut named = g.classes.clone();
        named.extend(model.classes.clone());
        let positive = parse_class_expr(&ch.positive)
            .and_then(|x| x.to_poly_class(&ch.positive, &model.basis, &named))
            .map_err(|x| ctx.invalid(x))?;
        let mut negative = Vec::new();
        for (label, coeff) in &ch.negative {
            negative.push(NTerm {
                label: label.clone(),
                class: ctx.class(label, &model.basis, &named)?,
                coefficient: parse_upoly(coeff).map_err(|x| ctx.invalid(x))?,
            });
        }
        chambers.push(UChamber {
            u_lo: ctx.rational(&ch.u[0])?,
            u_hi: ctx.rational(&ch.u[1])?,
            geometry: model,
            positive,
            negative,
        });
    }
    Ok(DivisorialCertificate {
        id: e.id.clone(),
        family: fam.id.clone(),
        center: e.center.clone(),
        geometry: g,
        divisor,
        log_discrepancy: ctx.rational(&e.log_discrepancy)?,
        tau: ctx.rational(&e.tau)?,
        pullback,
        chambers,
        expected_s: ctx.rational(&e.expected_s)?,
        expected_beta: ctx.rational(&e.expected_beta)?,
        status: status(&ctx, e.status.as_deref(), e.note.as_ref())?,
    })
}

fn build_flag(
    fam: &Family,
    path: &Path,
    e: &schema::FlagEntry,
    divisorial: &BTreeMap<String, Arc<DivisorialCertificate>>,
    surface_named: &BTreeMap<String, BTreeMap<String, DivisorClass>>,
) -> Result<FlagCertificate, LoadError> {
    let ctx = Ctx { path };
    let base = divisorial
        .get(&e.base)
        .cloned()
        .ok_or_else(|| ctx.reference(format!("divisorial certificate {}", e.base)))?;
    let surface = fam
        .surface(&e.surface)
        .cloned()
        .ok_or_else(|| ctx.reference(format!("surface {}", e.surface)))?;
    let restriction = fam
        .restrictions
        .iter()
        .find(|r| r.surface.name == surface.name && r.geometry.name == base.geometry.name)
        .map(|r| r.map.clone())
        .ok_or_else(|| {
            ctx.reference(format!(
                "restriction from {} to {}",
                base.geometry.name, surface.name
            ))
        })?;
    let named = surface_named.get(&surface.name).cloned().unwrap_or_default();
    let sclass = |s: &str| ctx.class(s, &surface.basis, &named);
    let curve = sclass(&e.curve)?;
    let mut chambers = Vec::new();
    for fc in &e.chambers {
        let mut nprime = Vec::new();
        for (label, coeff) in &fc.nprime {
            nprime.push(NPrimeTerm {
                label: label.clone(),
                class: sclass(label)?,
                coefficient: parse_upoly(coeff).map_err(|x| ctx.invalid(x))?,
            });
        }
        let mut v_chambers = Vec::new();
        for vc in &fc.v {
            let positive = parse_class_expr(&vc.positive)
                .and_then(|x| x.to_affine_class(&vc.positive, &surface.basis, &named))
                .map_err(|x| ctx.invalid(x))?;
            let mut negative = Vec::new();
            for (curve_name, coeff) in &vc.negative {
                if surface.curve(curve_name).is_none() {
                    return Err(ctx.reference(format!("curve {curve_name} on {}", surface.name)));
                }
                negative.push(SurfaceNTerm {
                    curve: curve_name.clone(),
                    coefficient: parse_affine(coeff).map_err(|x| ctx.invalid(x))?,
                });
            }
            v_chambers.push(VChamber {
                v_lo: parse_upoly(&vc.v[0]).map_err(|x| ctx.invalid(x))?,
                v_hi: parse_upoly(&vc.v[1]).map_err(|x| ctx.invalid(x))?,
                positive,
                negative,
                ordp: parse_affine(&vc.ordp).map_err(|x| ctx.invalid(x))?,
            });
        }
        chambers.push(FlagUChamber {
            u_lo: ctx.rational(&fc.u[0])?,
            u_hi: ctx.rational(&fc.u[1])?,
            d: parse_upoly(&fc.d).map_err(|x| ctx.invalid(x))?,
            nprime,
            t: parse_upoly(&fc.t).map_err(|x| ctx.invalid(x))?,
            v_chambers,
        });
    }
    let opt = |s: &Option<String>| s.as_deref().map(|x| ctx.rational(x)).transpose();
    let status = match status(&ctx, e.status.as_deref(), e.note.as_ref())? {
        Status::Established => base.status.clone(),
        own => own,
    };
    Ok(FlagCertificate {
        id: e.id.clone(),
        family: fam.id.clone(),
        center: e.center.clone(),
        base,
        surface,
        restriction,
        curve_label: e.curve.clone(),
        curve,
        point: e.point.clone(),
        chambers,
        expected: FlagExpected {
            s_wc: ctx.rational(&e.expected_s_wc)?,
            f_p: opt(&e.expected_f_p)?,
            s_wp: opt(&e.expected_s_wp)?,
            delta: opt(&e.expected_delta)?,
        },
        status,
    })
}

fn build_upper(fam: &Family, path: &Path, e: &schema::UpperBoundEntry) -> Result<UpperBoundCertificate, LoadError> {
    let ctx = Ctx { path };
    let g = fam
        .geometry(&e.geometry)
        .cloned()
        .ok_or_else(|| ctx.reference(format!("geometry {}", e.geometry)))?;
    let lo = ctx.rational(&e.nef_interval[0])?;
    if !lo.is_zero() {
        return Err(ctx.invalid("the nef interval must start at 0"));
    }
    let opt = |s: &Option<String>| s.as_deref().map(|x| ctx.rational(x)).transpose();
    Ok(UpperBoundCertificate {
        id: e.id.clone(),
        family: fam.id.clone(),
        center: e.center.clone(),
        divisor: ctx.class(&e.divisor, &g.basis, &g.classes)?,
        log_discrepancy: ctx.rational(&e.log_discrepancy)?,
        pullback: match &e.pullback {
            Some(p) => ctx.class(p, &g.basis, &g.classes)?,
            None => g.anticanonical.clone(),
        },
        nef_hi: ctx.rational(&e.nef_interval[1])?,
        expected_nef_part: opt(&e.expected_nef_part)?,
        expected_tail: opt(&e.expected_tail)?,
        expected_bound: ctx.rational(&e.expected_bound)?,
        claimed_beta_lower: ctx.rational(&e.claimed_beta_lower)?,
        geometry: g,
    })
}

fn load_scope(fam: &Family, path: &Path) -> Result<FamilyScope, LoadError> {
    let ctx = Ctx { path };
    let f: ScopeFile = parse_toml(path)?;
    if f.family != fam.id {
        return Err(ctx.invalid(format!("scope names family {}, directory is {}", f.family, fam.id)));
    }
    let mut centers = Vec::new();
    for c in f.centers {
        let coverage = match (c.certificate, c.covered_by) {
            (Some(id), None) => {
                if fam.certificate(&id).is_none() {
                    return Err(ctx.reference(format!("certificate {id} for center {}", c.name)));
                }
                Coverage::Certificate(id)
            }
            (None, Some(other)) => Coverage::CoveredBy(other),
            _ => {
                return Err(ctx.invalid(format!(
                    "center {} needs exactly one of `certificate` and `covered_by`",
                    c.name
                )))
            }
        };
        centers.push(ScopeCenter {
            name: c.name,
            coverage,
            note: c.note,
        });
    }
    let scope = FamilyScope {
        family: f.family,
        note: f.note,
        centers,
    };
    for c in &scope.centers {
        if let Coverage::CoveredBy(other) = &c.coverage {
            if scope.covering_certificate(&c.name).is_none() {
                return Err(ctx.reference(format!("center {} is covered by unresolvable {other}", c.name)));
            }
        }
    }
    Ok(scope)
}
