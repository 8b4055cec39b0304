//! Command implementations behind the `kstab` binary. Each command renders its
//! whole output into an [`Outcome`] so that runs are testable and
//! byte-for-byte deterministic.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::thread;

use kstab_core::certify::oracle::check_flag_oracle;
use kstab_core::certify::{Certificate, InvariantReport};
use kstab_core::corpus::{load_corpus, Corpus, Coverage, Family};
use kstab_core::exact::pfaffian::{
    pfaffians_5, printed_relation_pf4, printed_relation_pf5, printed_smoothing_matrix, published_pfaffians,
    single_term_variants, smoothing_matrix, specialize_non_toric, NON_TORIC_EQUATIONS,
};
use kstab_core::exact::{poly_identity, MultiPoly};

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// Exit status: a certificate or check failed.
pub const EXIT_FAILURE: u8 = 1;
/// Exit status: the corpus could not be read or parsed.
pub const EXIT_LOAD: u8 = 2;

/// Rendered output and exit status of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn load(root: &Path) -> Result<Corpus, Outcome> {
    load_corpus(root).map_err(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: EXIT_LOAD,
    })
}

/// Verifies all certificates on scoped threads; results keep corpus order.
pub fn verify_all(corpus: &Corpus) -> Vec<InvariantReport> {
    let certs: Vec<&Certificate> = corpus.certificates().collect();
    thread::scope(|s| {
        let handles: Vec<_> = certs.iter().map(|c| s.spawn(move || c.verify())).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification does not panic"))
            .collect()
    })
}

/// Compact `name=value` summary of a report's headline values.
pub fn headline(r: &InvariantReport) -> String {
    let keys: &[&str] = match r.kind {
        "divisorial" => &["S", "beta"],
        "flag" => &["S_WC", "F_P", "S_WP", "delta"],
        _ => &["S_bound", "beta_lower"],
    };
    keys.iter()
        .filter_map(|k| r.get(k).map(|q| format!("{k}={q}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn status_tag(r: &InvariantReport) -> String {
    if r.is_valid() {
        "OK".into()
    } else if r.is_failure() {
        format!("FAIL ({})", r.first_failure().unwrap_or_default())
    } else {
        format!("DISPUTED ({})", r.first_failure().unwrap_or_default())
    }
}

/// `verify <root>`.
pub fn run_verify(root: &Path) -> Outcome {
    let corpus = match load(root) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let reports = verify_all(&corpus);
    let mut out = String::new();
    let mut err = String::new();
    let mut failed = 0;
    let mut disputed = 0;
    for r in &reports {
        let _ = writeln!(out, "{}/{} {} {}", r.family, r.id, headline(r), status_tag(r));
        for c in &r.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  check {} {verdict}", c.name);
        }
        for c in &r.comparisons {
            let verdict = if c.matches() { "match" } else { "MISMATCH" };
            let _ = writeln!(out, "  value {} expected={} computed={} {verdict}", c.name, c.expected, c.computed);
        }
        if r.is_failure() {
            failed += 1;
            let _ = writeln!(
                err,
                "{}/{}: {}",
                r.family,
                r.id,
                r.first_failure().unwrap_or_default()
            );
        } else if !r.is_valid() {
            disputed += 1;
        }
    }
    if reports.is_empty() {
        out.push_str("0 certificates\n");
    } else {
        let _ = writeln!(
            out,
            "{} certificates, {failed} failed, {disputed} disputed",
            reports.len()
        );
    }
    Outcome {
        stdout: out,
        stderr: err,
        code: if failed == 0 { EXIT_OK } else { EXIT_FAILURE },
    }
}

fn value_or_dash(r: &InvariantReport, key: &str) -> String {
    r.get(key).map(|q| q.to_string()).unwrap_or_else(|| "-".into())
}

/// Cells of one ledger row.
fn ledger_cells(r: &InvariantReport) -> Vec<(&'static str, String)> {
    let mut cells = vec![
        ("center", r.center.clone()),
        ("certificate", r.id.clone()),
        ("kind", r.kind.to_string()),
    ];
    match r.kind {
        "divisorial" => {
            cells.push(("tau", value_or_dash(r, "tau")));
            cells.push(("S", value_or_dash(r, "S")));
            cells.push(("beta", value_or_dash(r, "beta")));
        }
        "flag" => {
            cells.push(("S_S", value_or_dash(r, "S_S")));
            cells.push(("S_WC", value_or_dash(r, "S_WC")));
            if r.get("S_WP").is_some() {
                cells.push(("F_P", value_or_dash(r, "F_P")));
                cells.push(("S_WP", value_or_dash(r, "S_WP")));
            }
            cells.push(("delta", value_or_dash(r, "delta")));
        }
        _ => {
            cells.push(("tau", value_or_dash(r, "tau_bound")));
            cells.push(("S", format!("<={}", value_or_dash(r, "S_bound"))));
            cells.push(("beta", format!(">={}", value_or_dash(r, "beta_lower"))));
        }
    }
    cells.push(("verdict", r.verdict.to_string()));
    let status = if r.is_valid() {
        "ok"
    } else if r.is_failure() {
        "failed"
    } else {
        "disputed"
    };
    cells.push(("status", status.into()));
    cells
}

fn scope_lines(fam: &Family, reports: &[&InvariantReport], machine: bool, out: &mut String) -> bool {
    let Some(scope) = &fam.scope else {
        if !machine {
            let _ = writeln!(out, "  scope: none");
        }
        return true;
    };
    let ids: BTreeSet<&str> = reports.iter().filter(|r| !r.is_failure()).map(|r| r.id.as_str()).collect();
    for (k, c) in scope.centers.iter().enumerate() {
        let cover = scope.covering_certificate(&c.name).unwrap_or("-");
        let via = match &c.coverage {
            Coverage::Certificate(_) => String::new(),
            Coverage::CoveredBy(other) => format!(" via {other}"),
        };
        if machine {
            let _ = writeln!(out, "{}/scope/{}.center={}", fam.id, k + 1, c.name);
            let _ = writeln!(out, "{}/scope/{}.covered_by={cover}", fam.id, k + 1);
        } else {
            let _ = writeln!(out, "  center {} -> {cover}{via}", c.name);
        }
    }
    let uncovered = scope.uncovered(&ids);
    let complete = uncovered.is_empty();
    if machine {
        let _ = writeln!(out, "{}/scope.complete={complete}", fam.id);
    } else if complete {
        let _ = writeln!(out, "  scope complete: {} centers covered", scope.centers.len());
    } else {
        let _ = writeln!(out, "  scope INCOMPLETE: {}", uncovered.join(", "));
    }
    complete
}

/// `report <root> [--machine]`.
pub fn run_report(root: &Path, machine: bool) -> Outcome {
    let corpus = match load(root) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let reports = verify_all(&corpus);
    let mut out = String::new();
    let mut ok = true;
    for fam in &corpus.families {
        let rows: Vec<&InvariantReport> = reports.iter().filter(|r| r.family == fam.id).collect();
        if !machine {
            let _ = writeln!(out, "family {}", fam.id);
        }
        let table: Vec<Vec<(&str, String)>> = rows.iter().map(|r| ledger_cells(r)).collect();
        if machine {
            for (r, cells) in rows.iter().zip(&table) {
                for (k, v) in cells {
                    let _ = writeln!(out, "{}/{}.{k}={v}", fam.id, r.id);
                }
            }
        } else {
            for cells in &table {
                let line: Vec<String> = cells
                    .iter()
                    .map(|(k, v)| match *k {
                        "center" | "certificate" | "kind" | "status" => v.clone(),
                        "verdict" => format!("[{v}]"),
                        _ => format!("{k}={v}"),
                    })
                    .collect();
                let _ = writeln!(out, "  {}", line.join(" "));
            }
        }
        ok &= rows.iter().all(|r| !r.is_failure());
        ok &= scope_lines(fam, &rows, machine, &mut out);
    }
    for s in &corpus.settled {
        if machine {
            let _ = writeln!(out, "{}/settled={}", s.id, s.reason);
        } else {
            let _ = writeln!(out, "family {}: settled externally ({})", s.id, s.reason);
        }
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
    }
}

/// `oracle <root> [--samples N] [--seed S]`.
pub fn run_oracle(root: &Path, samples: usize, seed: u64) -> Outcome {
    let corpus = match load(root) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let flags: Vec<_> = corpus
        .certificates()
        .filter_map(|c| match c {
            Certificate::Flag(f) => Some(f),
            _ => None,
        })
        .collect();
    let outcomes = thread::scope(|s| {
        let handles: Vec<_> = flags
            .iter()
            .map(|f| s.spawn(move || check_flag_oracle(f, samples, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle does not panic"))
            .collect::<Vec<_>>()
    });
    let mut out = String::new();
    let mut err = String::new();
    let mut total = 0;
    let mut bad = 0;
    for (f, o) in flags.iter().zip(&outcomes) {
        total += o.points;
        bad += o.mismatches.len();
        let verdict = if o.mismatches.is_empty() { "OK" } else { "MISMATCH" };
        let _ = writeln!(
            out,
            "{}/{} points={} degenerate={} mismatches={} {verdict}",
            f.family,
            f.id,
            o.points,
            o.degenerate_chambers,
            o.mismatches.len()
        );
        for m in &o.mismatches {
            let oracle = match &m.oracle {
                Ok(z) => z.render(&f.surface),
                Err(e) => format!("error: {e}"),
            };
            let _ = writeln!(
                err,
                "{}/{} u-chamber {} v-chamber {} at (u,v)=({},{}): certificate {} oracle {}",
                f.family,
                f.id,
                m.u_chamber,
                m.v_chamber,
                m.u,
                m.v,
                m.declared.render(&f.surface),
                oracle
            );
        }
    }
    let _ = writeln!(
        out,
        "{} flag certificates, {total} points, {bad} mismatches (samples={samples}, seed={seed})",
        flags.len()
    );
    Outcome {
        stdout: out,
        stderr: err,
        code: if bad == 0 { EXIT_OK } else { EXIT_FAILURE },
    }
}

/// `pfaffian`: verdicts are output, so the exit status is always success.
pub fn run_pfaffian() -> Outcome {
    let mut out = String::new();
    match pfaffians_5(&printed_smoothing_matrix()) {
        Ok(_) => out.push_str("printed matrix: skew-symmetric\n"),
        Err(e) => {
            let _ = writeln!(out, "printed matrix: rejected, {e}; using the skew-symmetric completion");
        }
    }
    let pfs = pfaffians_5(&smoothing_matrix()).expect("completed matrix is skew-symmetric");
    let published = published_pfaffians();
    for (k, (p, q)) in pfs.iter().zip(&published).enumerate() {
        let verdict = if poly_identity(p, q) { "matches" } else { "DIFFERS from" };
        let _ = writeln!(out, "Pf{} = {p}  ({verdict} the published generator)", k + 1);
    }
    let mut all = true;
    for (k, (p, eq)) in pfs.iter().zip(NON_TORIC_EQUATIONS).enumerate() {
        let expected = MultiPoly::parse(eq).expect("built-in equation");
        let ok = poly_identity(&specialize_non_toric(p), &expected);
        all &= ok;
        let _ = writeln!(out, "a=0,b=1: Pf{} = {eq} {}", k + 1, if ok { "OK" } else { "MISMATCH" });
    }
    let _ = writeln!(
        out,
        "specialization: {}",
        if all { "all five equations reproduced" } else { "MISMATCH" }
    );
    for rel in [printed_relation_pf5(), printed_relation_pf4()] {
        let holds = rel.holds(&pfs);
        let _ = writeln!(out, "relation {}: {}", rel.render(), if holds { "holds" } else { "false" });
        if !holds {
            let variants = single_term_variants(&rel, &pfs);
            if variants.is_empty() {
                out.push_str("  no single-term correction found\n");
            }
            for v in variants {
                let _ = writeln!(out, "  corrected: {} holds", v.render());
            }
        }
    }
    Outcome {
        stdout: out,
        stderr: String::new(),
        code: EXIT_OK,
    }
}
