//! Rendering of verification reports and catalog metadata as JSON, CSV and
//! Markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::catalog::{EntryMeta, LineDomain};
use crate::verify::{Record, VerificationReport};
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 13] = [
    "entry_id",
    "a",
    "b",
    "alpha",
    "x",
    "y",
    "numeric",
    "closed",
    "abs_err",
    "rel_err",
    "n_evals",
    "wall_time",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "markdown" | "md" => Ok(Self::Markdown),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

pub fn render_report(report: &VerificationReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => report_json(report),
        OutputFormat::Csv => report_csv(report),
        OutputFormat::Markdown => Ok(report_markdown(report)),
    }
}

/// JSON document `{records, summary}`. Numbers use the shortest
/// representation that parses back to the same `f64`.
pub fn report_json(report: &VerificationReport) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Format(e.to_string()))
}

pub fn parse_report_json(s: &str) -> Result<VerificationReport> {
    serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
}

fn csv_row(r: &Record) -> Vec<String> {
    vec![
        r.entry_id.clone(),
        fmt_opt(r.params.a),
        fmt_opt(r.params.b),
        fmt_opt(r.params.alpha),
        fmt_num(r.x),
        fmt_num(r.y),
        fmt_opt(r.numeric),
        fmt_opt(r.closed),
        fmt_opt(r.abs_err),
        fmt_opt(r.rel_err),
        r.n_evals.to_string(),
        fmt_num(r.wall_time),
        r.status.to_string(),
    ]
}

pub fn report_csv(report: &VerificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in &report.records {
        w.write_record(csv_row(r)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

/// One table per entry, in order of first appearance, then a summary.
pub fn report_markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    let mut order: Vec<&str> = Vec::new();
    for r in &report.records {
        if !order.contains(&r.entry_id.as_str()) {
            order.push(&r.entry_id);
        }
    }
    for id in order {
        let _ = writeln!(out, "### {}\n", md_cell(id));
        out.push_str("| params | x | y | numeric | closed | abs_err | rel_err | n_evals | wall_time | status | reason |\n");
        out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
        for r in report.records.iter().filter(|r| r.entry_id == id) {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                md_cell(&r.params.to_string()),
                fmt_num(r.x),
                fmt_num(r.y),
                fmt_opt(r.numeric),
                fmt_opt(r.closed),
                fmt_opt(r.abs_err),
                fmt_opt(r.rel_err),
                r.n_evals,
                fmt_num(r.wall_time),
                r.status,
                md_cell(r.reason.as_deref().unwrap_or("")),
            );
        }
        out.push('\n');
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "**Summary:** {} pass, {} fail, {} skip, max rel err {}, {} numerical failures",
        s.n_pass,
        s.n_fail,
        s.n_skip,
        s.max_rel_err.map(fmt_num).unwrap_or_else(|| "n/a".into()),
        s.n_numerical_failures
    );
    out
}

fn domain_name(d: LineDomain) -> &'static str {
    match d {
        LineDomain::HalfLine => "half_line",
        LineDomain::FullLine => "full_line",
    }
}

fn meta_row(m: &EntryMeta) -> Vec<String> {
    vec![
        m.id.clone(),
        m.key.clone(),
        m.equation.clone(),
        m.gr_number.clone().unwrap_or_default(),
        m.pv_flag.to_string(),
        domain_name(m.domain).to_string(),
        m.params
            .iter()
            .map(|p| p.name())
            .collect::<Vec<_>>()
            .join(" "),
        m.param_constraints.clone(),
        m.naive_limit_witness.to_string(),
        m.notes.clone(),
    ]
}

const META_HEADER: [&str; 10] = [
    "id",
    "key",
    "equation",
    "gr_number",
    "pv_flag",
    "domain",
    "params",
    "param_constraints",
    "naive_limit_witness",
    "notes",
];

pub fn render_entries(metas: &[EntryMeta], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(metas).map_err(|e| Error::Format(e.to_string()))
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(META_HEADER).map_err(csv_err)?;
            for m in metas {
                w.write_record(meta_row(m)).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(csv_err)?;
            String::from_utf8(bytes).map_err(csv_err)
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", META_HEADER.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(META_HEADER.len()));
            for m in metas {
                let cells: Vec<String> = meta_row(m).iter().map(|c| md_cell(c)).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            Ok(out)
        }
    }
}
