//! CSV output and the run record that accompanies it.

use nextbest_core::analysis::{ExperimentConfig, ExperimentResult, ResultRow};
use serde::Serialize;

use crate::config::ConfigDocument;
use crate::graph_doc::FORMAT_VERSION;

pub const CSV_HEADER: [&str; 12] = [
    "n",
    "c",
    "alpha",
    "mu",
    "algorithm",
    "generator",
    "trials",
    "success_rate",
    "mean_hops",
    "ci95",
    "mean_forward",
    "mean_backtrack",
];

fn num(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v}"),
        None => "NaN".to_string(),
    }
}

fn record(row: &ResultRow) -> [String; 12] {
    [
        row.n.to_string(),
        row.c.to_string(),
        format!("{}", row.alpha),
        row.mu.to_string(),
        row.algorithm.as_str().to_string(),
        row.generator.as_str().to_string(),
        row.trials.to_string(),
        format!("{}", row.success_rate),
        num(row.mean_hops),
        num(row.ci95),
        num(row.mean_forward),
        num(row.mean_backtrack),
    ]
}

/// Result rows as CSV; undefined means print as `NaN`.
pub fn to_csv(result: &ExperimentResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in &result.rows {
        w.write_record(record(row)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Debug, Serialize)]
pub struct RowCounts {
    pub n: u32,
    pub c: u32,
    pub alpha: f64,
    pub algorithm: String,
    pub successes: u64,
    pub aborted: u64,
    pub disconnected_pairs: u64,
    pub disconnected_graphs: u64,
}

/// Effective configuration plus the counts the CSV has no columns for.
#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub format_version: u32,
    pub config: ConfigDocument,
    pub rows: Vec<RowCounts>,
}

impl RunRecord {
    pub fn new(config: &ExperimentConfig, result: &ExperimentResult) -> Self {
        RunRecord {
            format_version: FORMAT_VERSION,
            config: ConfigDocument::from_config(config),
            rows: result
                .rows
                .iter()
                .map(|r| RowCounts {
                    n: r.n,
                    c: r.c,
                    alpha: r.alpha,
                    algorithm: r.algorithm.as_str().to_string(),
                    successes: r.successes,
                    aborted: r.aborted,
                    disconnected_pairs: r.disconnected_pairs,
                    disconnected_graphs: r.disconnected_graphs,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run records always serialize");
        s.push('\n');
        s
    }
}
