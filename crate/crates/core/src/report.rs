//! Serialization of suite reports.

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::harness::BoundReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format '{other}' (expected json, csv or text)")),
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_report(rep: &BoundReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(rep).expect("reports serialize"),
        ReportFormat::Csv => emit_csv(rep),
        ReportFormat::Text => emit_text(rep),
    }
}

fn emit_csv(rep: &BoundReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["ring", "bound", "Q", "n", "m", "lhs", "rhs", "verdict", "note"])
        .expect("in-memory write");
    for e in &rep.entries {
        w.write_record([
            rep.ring.clone(),
            e.bound.clone(),
            e.q.clone(),
            opt(&e.n),
            opt(&e.m),
            opt(&e.lhs),
            opt(&e.rhs),
            e.verdict.to_string(),
            opt(&e.note),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn emit_text(rep: &BoundReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\nring {} (d = {})\n", rep.version, rep.ring, rep.d));
    match &rep.ia {
        Some(ia) => out.push_str(&format!("I(A) = {} ({}), trace {:?}\n", ia.value, ia.status, ia.trace)),
        None => out.push_str("I(A) unavailable\n"),
    }
    out.push_str(&format!(
        "gCM: {} ({})\n",
        if rep.gcm.verified { "verified" } else { "not verified" },
        rep.gcm.evidence
    ));
    let mut current_q = None;
    for e in &rep.entries {
        if current_q.as_ref() != Some(&e.q) {
            current_q = Some(e.q.clone());
        }
        let params = match (e.n, e.m) {
            (Some(n), Some(m)) => format!(" [Q = {}, n = {n}, m = {m}]", e.q),
            (Some(n), None) => format!(" [Q = {}, n = {n}]", e.q),
            _ => format!(" [Q = {}]", e.q),
        };
        match (e.lhs, e.rhs) {
            (Some(l), Some(r)) => {
                let rel = if l <= r { "≤" } else { ">" };
                let sharp = if e.is_sharp() { " (sharp)" } else { "" };
                out.push_str(&format!("{}: {l} {rel} {r} {}{sharp}{params}\n", e.bound, e.verdict));
            }
            _ => out.push_str(&format!("{}: {}{params} {}\n", e.bound, e.verdict, opt(&e.note))),
        }
    }
    let s = &rep.summary;
    out.push_str(&format!(
        "summary: {} pass, {} fail, {} skipped, {} error, {} sharp\n",
        s.pass, s.fail, s.skipped, s.error, s.sharp
    ));
    if s.contradictions > 0 {
        out.push_str(&format!(
            "CONTRADICTION: {} failing entr{} on a ring verified to be gCM\n",
            s.contradictions,
            if s.contradictions == 1 { "y" } else { "ies" }
        ));
    }
    out
}

pub fn parse_json_report(text: &str) -> Result<BoundReport> {
    serde_json::from_str(text).map_err(|e| EngineError::Precondition(format!("invalid report: {e}")))
}
