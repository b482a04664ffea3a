//! Text and TSV rendering of verification and census reports.

use std::fmt::Write as _;
use std::str::FromStr;

use super::census::CensusReport;
use super::paper::PaperReport;
use super::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" => Ok(Format::Plain),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format {s:?} (expected plain|tsv)")),
        }
    }
}

pub const TSV_HEADER: &str = "group\tkernel\tring\tbrute\tpredicted\tcase\twitness\tmillis";

fn verdict(b: bool) -> &'static str {
    if b {
        "commutative"
    } else {
        "noncommutative"
    }
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn tsv_line(out: &mut String, r: &Row) {
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
        tsv_field(&r.group),
        tsv_field(&r.kernel),
        r.ring,
        verdict(r.brute),
        verdict(r.predicted),
        r.case.as_ref().map_or("-".to_string(), |c| c.case_id.to_string()),
        r.witness.as_deref().map_or("-".to_string(), tsv_field),
        r.millis
    );
}

/// TSV with the standard header; an empty row list gives the header alone.
pub fn rows_tsv<'a>(rows: impl IntoIterator<Item = &'a Row>) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for r in rows {
        tsv_line(&mut out, r);
    }
    out
}

/// One plain-text row; timing is left out so repeated runs match byte for byte.
pub fn row_plain(r: &Row) -> String {
    let case = r
        .case
        .as_ref()
        .map_or("-".to_string(), |c| c.to_string());
    let mut line = format!(
        "{:<14} {:<26} {:<4} brute={:<14} predicted={:<14} case={}",
        r.group,
        r.kernel,
        r.ring.to_string(),
        verdict(r.brute),
        verdict(r.predicted),
        case
    );
    if r.is_mismatch() {
        line.push_str("  MISMATCH");
    }
    line
}

pub fn emit_paper(report: &PaperReport, format: Format) -> String {
    match format {
        Format::Tsv => rows_tsv(report.rows()),
        Format::Plain => {
            let mut out = String::new();
            for b in &report.blocks {
                let _ = writeln!(out, "== {} ==", b.title);
                for r in &b.rows {
                    let _ = writeln!(out, "  {}", row_plain(r));
                }
                for c in &b.checks {
                    let _ = writeln!(
                        out,
                        "  [{}] {}",
                        if c.passed { "ok" } else { "FAIL" },
                        c.description
                    );
                }
                for n in &b.notes {
                    let _ = writeln!(out, "  [note] {n}");
                }
                let _ = writeln!(out, "{}: {}\n", if b.passed() { "PASS" } else { "FAIL" }, b.title);
            }
            let failed = report.blocks.iter().filter(|b| !b.passed()).count();
            let _ = writeln!(
                out,
                "result: {} ({} blocks, {} failed)",
                if report.passed() { "PASS" } else { "FAIL" },
                report.blocks.len(),
                failed
            );
            out
        }
    }
}

pub fn emit_census(report: &CensusReport, format: Format) -> String {
    match format {
        Format::Tsv => rows_tsv(report.rows.iter().map(|r| &r.row)),
        Format::Plain => census_plain(report),
    }
}

fn census_plain(report: &CensusReport) -> String {
    let mut out = String::new();
    let rings: Vec<String> = report.rings.iter().map(|r| r.to_string()).collect();
    let _ = writeln!(
        out,
        "census: max rank {}, rings {}, {} groups, {} rows",
        report.max_rank,
        rings.join(","),
        report.groups.len(),
        report.rows.len()
    );
    let _ = writeln!(out, "\n== groups ==");
    for g in &report.groups {
        let scan = match (g.scanned_kernels, g.scan_agrees) {
            (Some(n), Some(true)) => format!(", subgroup scan {n} (same)"),
            (Some(n), _) => format!(", subgroup scan {n} (DIFFERENT)"),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "{:<14} order {:<3} exponent {:<2} rank {} kernels {}{}{}",
            g.label,
            g.order,
            g.exponent,
            g.quotient_rank,
            g.kernels,
            scan,
            if g.kernel_law_holds() { "" } else { "  KERNEL-COUNT-MISMATCH" }
        );
    }
    let _ = writeln!(out, "\n== rows ==");
    for r in &report.rows {
        let _ = writeln!(out, "{}", row_plain(&r.row));
    }

    let _ = writeln!(out, "\n== summary ==");
    let mismatches = report.mismatch_count();
    let _ = writeln!(out, "mismatches: {mismatches}");
    for r in report.mismatches() {
        let _ = writeln!(
            out,
            "  MISMATCH {} {} {} witness: {}",
            r.row.group,
            r.row.kernel,
            r.row.ring,
            r.row.witness.as_deref().unwrap_or("-")
        );
    }
    for (ring, counts) in report.case_counts() {
        let total = report.rows.iter().filter(|r| r.row.ring == ring).count();
        let commutative: usize = counts.values().sum();
        let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
        let _ = writeln!(
            out,
            "ring {ring}: {total} rows, {commutative} commutative ({})",
            if parts.is_empty() { "none".into() } else { parts.join(", ") }
        );
    }
    let _ = writeln!(
        out,
        "kernel counts: {} (2^k - 1 for every group; subgroup scan run on groups of order <= 32)",
        if report.kernel_law_holds() { "ok" } else { "FAILED" }
    );
    let _ = writeln!(
        out,
        "exponent law: {} (commutative nonabelian rows are 2-groups of exponent dividing 8; control rows noncommutative)",
        if report.exponent_law_holds() { "ok" } else { "FAILED" }
    );
    let _ = writeln!(
        out,
        "audit: {} commutative instances audited, {} violations",
        report.audited_instances,
        report.audit_violations.len()
    );
    for v in &report.audit_violations {
        let _ = writeln!(out, "  {v}");
    }
    match report.other_class_finding() {
        Some(f) => {
            let _ = writeln!(
                out,
                "finding (rings of class other): {} of {} nonabelian rows commutative; C4i {}, C5 {}, other cases {}; C4i/C5 rows not commutative {}",
                f.commutative, f.rows, f.c4i, f.c5, f.unexplained, f.missed
            );
            let _ = writeln!(
                out,
                "  {}",
                if f.unexplained == 0 && f.missed == 0 {
                    "commutative rows are exactly the C4i and C5 rows: both cases hold with no ring condition, all others need R_2 = 0 or characteristic 4"
                } else {
                    "commutative rows DIFFER from the C4i and C5 rows"
                }
            );
        }
        None => {
            let _ = writeln!(out, "finding (rings of class other): no such ring in this run");
        }
    }
    let five = report.case_five_finding();
    let _ = writeln!(
        out,
        "finding (G[16,4] x E): {} rows, {} commutative and matching <a,b^2> x E or <ab,b^2> x E, {} commutative without a match, {} matching but not commutative",
        five.rows, five.commutative_matched, five.commutative_unmatched, five.matched_not_commutative
    );
    let _ = writeln!(
        out,
        "  {}",
        if five.commutative_unmatched == 0 && five.matched_not_commutative == 0 {
            "both kernel options carry the factor E"
        } else {
            "the kernel options do NOT both carry the factor E"
        }
    );
    let _ = writeln!(out, "\nresult: {}", if report.passed() { "PASS" } else { "FAIL" });
    out
}
