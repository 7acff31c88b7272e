use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::decomp::DecompositionReport;
use crate::genus2::AutGroupId;
use crate::picard::{Certainty, Step};

/// Reports for one group, rendered side by side as table rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportSet {
    pub group: AutGroupId,
    pub reports: Vec<DecompositionReport>,
    /// Dimension columns to show, ascending.
    pub columns: Vec<i64>,
}

impl ReportSet {
    /// Columns are every dimension that occurs plus any `extra` (typically a
    /// published table's columns, so all-zero ones still appear).
    pub fn new(group: AutGroupId, reports: Vec<DecompositionReport>, extra: &[i64]) -> Self {
        let mut columns: BTreeSet<i64> = extra.iter().copied().collect();
        for r in &reports {
            columns.extend(r.histogram.iter().filter(|(_, &v)| v > 0).map(|(&n, _)| n));
        }
        ReportSet { group, reports, columns: columns.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected md, csv or json")),
        }
    }
}

pub fn render(set: &ReportSet, format: Format) -> String {
    match format {
        Format::Markdown => markdown(set),
        Format::Csv => csv(set),
        Format::Json => json(set),
    }
}

fn markdown(set: &ReportSet) -> String {
    let mut out = format!("# Dimension components for {} ({})\n\n", set.group.display_name(), set.group);
    if set.is_empty() {
        out.push_str(
            "The decomposition is empty: no subgroup H with X/H rational has |H| >= 5, so no D_H is very ample.\n",
        );
        return out;
    }
    let header: Vec<String> = set.columns.iter().map(|n| format!("D_{n}")).collect();
    let _ = writeln!(out, "|H| | {}", header.join(" | "));
    let _ = writeln!(out, "--- | {}", vec!["---"; header.len()].join(" | "));
    for r in &set.reports {
        let cells: Vec<String> = set.columns.iter().map(|&n| r.count(n).to_string()).collect();
        let _ = writeln!(out, "{} | {}", r.h.order, cells.join(" | "));
    }
    let open: usize =
        set.reports.iter().flat_map(|r| &r.components).filter(|c| c.certainty != Certainty::Proved).count();
    if open > 0 {
        let _ = writeln!(out, "\n{open} component(s) rest on unproved distinctness.");
    }
    out
}

fn csv(set: &ReportSet) -> String {
    let mut out = String::from("H");
    for n in &set.columns {
        let _ = write!(out, ",n:{n}");
    }
    out.push('\n');
    for r in &set.reports {
        out.push_str(&r.h.order.to_string());
        for &n in &set.columns {
            let _ = write!(out, ",{}", r.count(n));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonComponent<'a> {
    #[serde(rename = "N_label")]
    n_label: &'a str,
    #[serde(rename = "N_order")]
    n_order: usize,
    dimension: i64,
    certainty: Certainty,
    certificate: &'a [Step],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    group: &'static str,
    #[serde(rename = "order_of_H")]
    order_of_h: usize,
    components: Vec<JsonComponent<'a>>,
    histogram: &'a crate::decomp::Histogram,
}

fn json(set: &ReportSet) -> String {
    let reports: Vec<JsonReport> = set
        .reports
        .iter()
        .map(|r| JsonReport {
            group: r.group.name(),
            order_of_h: r.h.order,
            components: r
                .components
                .iter()
                .map(|c| JsonComponent {
                    n_label: &c.n_label,
                    n_order: c.n_order,
                    dimension: c.dimension,
                    certainty: c.certainty,
                    certificate: &c.certificate.steps,
                })
                .collect(),
            histogram: &r.histogram,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&reports).expect("report values serialize");
    out.push('\n');
    out
}
