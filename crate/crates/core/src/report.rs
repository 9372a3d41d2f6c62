//! Pairs-file parsing and report rendering (TSV and JSON lines).
//!
//! Reports keep the input pair order so they align line for line with the
//! pairs file; the junction and LCA lists inside a line are label-sorted.
//! Rendering is fully deterministic: identical inputs produce identical
//! bytes.

use std::error::Error;
use std::fmt;

use crate::junction::PairReport;
use crate::lca::LcaReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Tsv,
    Jsonl,
}

impl ReportFormat {
    pub fn from_flag(value: &str) -> Option<ReportFormat> {
        match value {
            "tsv" => Some(ReportFormat::Tsv),
            "jsonl" => Some(ReportFormat::Jsonl),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairsParseError {
    pub line: usize,
    pub text: String,
}

impl fmt::Display for PairsParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}: expected \"<label> <label>\", got {:?}",
            self.line, self.text
        )
    }
}

impl Error for PairsParseError {}

/// Parses a pairs file: one `<label> <label>` per line, `#` comments and
/// blank lines ignored. Identical labels are allowed (such pairs have no
/// junctions by convention).
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, PairsParseError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(u), Some(v), None) => pairs.push((u.to_string(), v.to_string())),
            _ => {
                return Err(PairsParseError {
                    line: i + 1,
                    text: trimmed.to_string(),
                })
            }
        }
    }
    Ok(pairs)
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_array(labels: &[String]) -> String {
    let items: Vec<String> = labels.iter().map(|l| json_string(l)).collect();
    format!("[{}]", items.join(","))
}

/// One report line (no trailing newline) for a junction query.
pub fn render_junction_line(report: &PairReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Tsv => match &report.result {
            Ok(junctions) => format!("{}\t{}\t{}", report.u, report.v, junctions.join(",")),
            Err(e) => format!("{}\t{}\terror: {}", report.u, report.v, e),
        },
        ReportFormat::Jsonl => match &report.result {
            Ok(junctions) => format!(
                "{{\"u\":{},\"v\":{},\"junctions\":{}}}",
                json_string(&report.u),
                json_string(&report.v),
                json_array(junctions)
            ),
            Err(e) => format!(
                "{{\"u\":{},\"v\":{},\"error\":{}}}",
                json_string(&report.u),
                json_string(&report.v),
                json_string(e)
            ),
        },
    }
}

/// One report line (no trailing newline) for an LCA query; same layout as
/// the junction line plus the `lcas` field/column.
pub fn render_lca_line(report: &LcaReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Tsv => match &report.result {
            Ok(answer) => format!(
                "{}\t{}\t{}\t{}",
                report.u,
                report.v,
                answer.junctions.join(","),
                answer.lcas.join(",")
            ),
            Err(e) => format!("{}\t{}\terror: {}", report.u, report.v, e),
        },
        ReportFormat::Jsonl => match &report.result {
            Ok(answer) => format!(
                "{{\"u\":{},\"v\":{},\"junctions\":{},\"lcas\":{}}}",
                json_string(&report.u),
                json_string(&report.v),
                json_array(&answer.junctions),
                json_array(&answer.lcas)
            ),
            Err(e) => format!(
                "{{\"u\":{},\"v\":{},\"error\":{}}}",
                json_string(&report.u),
                json_string(&report.v),
                json_string(e)
            ),
        },
    }
}
