//! JSON export of a single routing trace.

use nextbest_core::{NodeId, RouteTrace};
use serde::{Deserialize, Serialize};

use crate::graph_doc::{ParamsDoc, FORMAT_VERSION};

/// Paths longer than this are cut in exports unless overridden.
pub const DEFAULT_MAX_PATH: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryDoc {
    pub source: u32,
    pub target: u32,
    pub algorithm: String,
    pub hop_cap: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Full length of `path`.
    pub path_length: usize,
    /// Entries kept from the front of `path` and `x_sequence`.
    pub kept: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub format_version: u32,
    pub graph: ParamsDoc,
    pub query: QueryDoc,
    pub outcome: String,
    pub forward_hops: u64,
    pub backtrack_hops: u64,
    pub marked_count: u64,
    pub path: Vec<u32>,
    /// `null` where the path node has no neighbors.
    pub x_sequence: Vec<Option<u32>>,
    pub truncated: Option<Truncation>,
}

impl TraceDocument {
    pub fn new(trace: &RouteTrace, graph: ParamsDoc, hop_cap: u64, max_path: usize) -> Self {
        let len = trace.path.len();
        let kept = len.min(max_path);
        TraceDocument {
            format_version: FORMAT_VERSION,
            graph,
            query: QueryDoc {
                source: trace.source.0,
                target: trace.target.0,
                algorithm: trace.algorithm.as_str().to_string(),
                hop_cap,
            },
            outcome: trace.outcome.as_str().to_string(),
            forward_hops: trace.forward_hops,
            backtrack_hops: trace.backtrack_hops,
            marked_count: trace.marked_count,
            path: trace.path[..kept].iter().map(|&NodeId(v)| v).collect(),
            x_sequence: trace.x_sequence[..kept]
                .iter()
                .map(|&x| (x != u32::MAX).then_some(x))
                .collect(),
            truncated: (kept < len).then_some(Truncation {
                path_length: len,
                kept,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace documents always serialize");
        s.push('\n');
        s
    }
}
