//! Text and CSV renderings of verification results.

use std::fmt::Write as _;
use std::str::FromStr;

use psi_extrema::verify::{IdentityFailure, IdentityReport, OrbitSummary, RangeEntry, ValueCheck};
use psi_extrema::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, thiserror::Error)]
#[error("unknown report format `{0}` (expected `table` or `csv`)")]
pub struct UnknownFormat(pub String);

impl FromStr for ReportFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "g",
    "n",
    "d",
    "space_size",
    "max",
    "argmax_key",
    "min",
    "argmin_key",
    "S",
    "LC",
    "P",
    "status",
];

/// `num/den`, always with the denominator.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn keys(orbits: &[OrbitSummary]) -> String {
    orbits
        .iter()
        .map(|o| o.key.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn status(entry: &RangeEntry) -> &'static str {
    match entry {
        RangeEntry::Verified(r) if r.passed() => "PASS",
        RangeEntry::Verified(_) => "FAIL",
        RangeEntry::Refused { .. } => "REFUSED",
    }
}

fn row(entry: &RangeEntry) -> [String; 12] {
    let (g, n) = entry.index();
    match entry {
        RangeEntry::Verified(r) => [
            g.to_string(),
            n.to_string(),
            r.d.to_string(),
            r.space_size.to_string(),
            fraction(&r.max),
            keys(&r.argmax),
            fraction(&r.min),
            keys(&r.argmin),
            flag(r.hypotheses.symmetric()).into(),
            flag(r.hypotheses.log_concave()).into(),
            flag(r.hypotheses.positive()).into(),
            status(entry).into(),
        ],
        RangeEntry::Refused { index, .. } => [
            g.to_string(),
            n.to_string(),
            index.dimension().to_string(),
            index
                .space()
                .size()
                .map_or_else(|| "overflow".into(), |s| s.to_string()),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            status(entry).into(),
        ],
    }
}

fn sorted(entries: &[RangeEntry]) -> Vec<&RangeEntry> {
    let mut refs: Vec<&RangeEntry> = entries.iter().collect();
    refs.sort_by_key(|e| e.index());
    refs
}

/// Renders range results ordered by `(g, n)`. An empty list gives the header
/// alone.
pub fn emit_report(entries: &[RangeEntry], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(entries),
        ReportFormat::Table => emit_table(entries),
    }
}

fn emit_csv(entries: &[RangeEntry]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(CSV_HEADER)
        .expect("writing to memory cannot fail");
    for entry in sorted(entries) {
        writer
            .write_record(row(entry))
            .expect("writing to memory cannot fail");
    }
    let bytes = writer.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("fields are UTF-8")
}

fn emit_table(entries: &[RangeEntry]) -> String {
    let rows: Vec<[String; 12]> = sorted(entries).into_iter().map(row).collect();
    let mut widths = CSV_HEADER.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut text = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k > 0 {
                text.push_str("  ");
            }
            let _ = write!(text, "{cell:<w$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&CSV_HEADER);
    for r in &rows {
        line(&r.each_ref().map(String::as_str));
    }
    for entry in sorted(entries) {
        match entry {
            RangeEntry::Verified(r) => {
                if let Some(failure) = &r.failure {
                    let _ = writeln!(out, "({}, {}): {failure}", r.g, r.n);
                }
            }
            RangeEntry::Refused { index, error } => {
                let _ = writeln!(out, "({}, {}): refused: {error}", index.g(), index.n());
            }
        }
    }
    out
}

fn identity_failure(out: &mut String, name: &str, failure: &Option<IdentityFailure>) {
    match failure {
        None => {
            let _ = writeln!(out, "{name}: ok");
        }
        Some(f) => {
            let _ = writeln!(
                out,
                "{name}: FAIL at {} entry {}: {} != {}",
                f.vector,
                f.index + 1,
                fraction(&f.lhs),
                fraction(&f.rhs)
            );
        }
    }
}

fn value_check(out: &mut String, name: &str, check: &Option<ValueCheck>) {
    if let Some(c) = check {
        let verdict = if c.holds() { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{name}: {verdict} (expected {}, found {})",
            fraction(&c.expected),
            fraction(&c.found)
        );
    }
}

/// Human-readable summary of one identity run.
pub fn emit_identity_report(report: &IdentityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g={} n={}", report.g, report.n);
    let coverage = if report.exhaustive {
        "exhaustive".to_string()
    } else {
        format!("sampled, seed {}", report.seed)
    };
    let _ = writeln!(out, "vectors: {} ({coverage})", report.vectors_checked);
    let _ = writeln!(out, "string checks: {}", report.string_checks);
    let _ = writeln!(out, "dilaton checks: {}", report.dilaton_checks);
    identity_failure(&mut out, "string", &report.string_failure);
    identity_failure(&mut out, "dilaton", &report.dilaton_failure);
    value_check(&mut out, "one-point", &report.one_point);
    value_check(&mut out, "dilaton regime", &report.dilaton_regime);
    let _ = writeln!(
        out,
        "status: {}",
        if report.all_hold() { "PASS" } else { "FAIL" }
    );
    out
}
