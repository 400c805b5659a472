//! Suite reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use anyhow::Result;
use bireg_core::report::{Status, Summary};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub suite: String,
    pub id: String,
    pub status: Status,
    /// Truncation order or index range the verdict covers.
    pub scope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Indented lines shown under the case in text output.
    #[serde(skip)]
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseRow>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &str, cases: Vec<CaseRow>) -> Self {
        let summary = Summary::from_statuses(cases.iter().map(|c| c.status));
        SuiteReport { suite: suite.into(), cases, summary }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(report: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(text(report)),
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => csv_text(report),
    }
}

fn mismatch_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.cases {
        let _ = write!(out, "{:<18} {}/{}  [{}]  {} ms", c.status.as_str(), c.suite, c.id, c.scope, c.runtime_ms);
        if let Some(m) = &c.first_mismatch {
            let _ = write!(out, "  first mismatch: {}", mismatch_text(m));
        }
        out.push('\n');
        if let Some(n) = &c.note {
            let _ = writeln!(out, "    note: {n}");
        }
        for l in &c.lines {
            let _ = writeln!(out, "    {l}");
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "{}: {} cases, {} passed, {} failed, {} erratum candidates, {} skipped",
        report.suite, s.total, s.passed, s.failed, s.erratum_candidates, s.skipped
    );
    out
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    suite: &'a str,
    id: &'a str,
    status: &'a str,
    scope: &'a str,
    first_mismatch: String,
    params: String,
    runtime_ms: u64,
    note: &'a str,
}

fn csv_text(report: &SuiteReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in &report.cases {
        w.serialize(CsvRecord {
            suite: &c.suite,
            id: &c.id,
            status: c.status.as_str(),
            scope: &c.scope,
            first_mismatch: c.first_mismatch.as_ref().map(mismatch_text).unwrap_or_default(),
            params: c.params.as_ref().map(|p| p.join(";")).unwrap_or_default(),
            runtime_ms: c.runtime_ms,
            note: c.note.as_deref().unwrap_or(""),
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
