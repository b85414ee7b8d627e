//! Verification reports as TOML documents: a header followed by one
//! `[[check]]` table per record.

use std::io::Write;
use std::path::Path;

use fracairy_core::verification::{CheckRecord, VerificationReport};

use crate::error::{CliError, Result};
use crate::format::sig;

/// Significant digits of measured values.
pub const MEASURED_DIGITS: usize = 12;
/// Significant digits of expected values and tolerances.
pub const EXPECTED_DIGITS: usize = 7;

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn number(v: f64, digits: usize) -> String {
    let s = sig(v, digits);
    if s.contains(['.', 'e', 'n', 'i']) {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn render_record(r: &CheckRecord) -> String {
    format!(
        "[[check]]\nid = {}\nmeasured = {}\nexpected = {}\ntol = {}\nrelation = {}\npass = {}\ngrid = {}\nprovenance = {}\n",
        quoted(&r.id),
        number(r.measured, MEASURED_DIGITS),
        number(r.expected, EXPECTED_DIGITS),
        number(r.tol, EXPECTED_DIGITS),
        quoted(r.relation.name()),
        r.pass,
        quoted(&r.grid),
        quoted(&r.provenance),
    )
}

/// The whole report. `context` holds extra header pairs such as the battery
/// name and the orders it ran at.
pub fn render(report: &VerificationReport, context: &[(&str, String)]) -> String {
    let failed = report.failures().count();
    let mut out = String::from("# fracairy verification report\n");
    for (k, v) in context {
        out.push_str(&format!("{k} = {}\n", quoted(v)));
    }
    out.push_str(&format!("checks = {}\nfailed = {failed}\nall_pass = {}\n", report.records.len(), failed == 0));
    out.push_str("notes = [");
    for (i, n) in report.notes.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&quoted(n));
    }
    out.push_str("]\n");
    for r in &report.records {
        out.push('\n');
        out.push_str(&render_record(r));
    }
    out
}

pub fn write<W: Write>(mut w: W, path: &Path, text: &str) -> Result<()> {
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

/// One line per record: PASS/FAIL, id, measured, relation, expected, tol.
pub fn summary_line(r: &CheckRecord) -> String {
    format!(
        "{} {} measured={} {} {} tol={}",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        sig(r.measured, 6),
        r.relation.name(),
        sig(r.expected, 7),
        sig(r.tol, 3)
    )
}
