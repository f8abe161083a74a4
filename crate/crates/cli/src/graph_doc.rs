//! Versioned JSON form of an [`OverlayGraph`].

use std::collections::BTreeMap;

use nextbest_core::{EdgeKind, GeneratorKind, GraphParams, NodeId, OverlayGraph};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub n: u32,
    pub c: u32,
    pub alpha: f64,
    pub mu: u32,
    pub seed: u64,
    pub generator: String,
}

impl From<&GraphParams> for ParamsDoc {
    fn from(p: &GraphParams) -> Self {
        ParamsDoc {
            n: p.n,
            c: p.c,
            alpha: p.alpha,
            mu: p.mu,
            seed: p.seed,
            generator: p.generator.as_str().to_string(),
        }
    }
}

impl ParamsDoc {
    pub fn to_params(&self) -> CliResult<GraphParams> {
        let generator: GeneratorKind = self.generator.parse()?;
        Ok(GraphParams::new(self.n, self.c, self.alpha, self.seed)
            .with_mu(self.mu)
            .with_generator(generator))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: u32,
    pub params: ParamsDoc,
    pub gamma: f64,
    pub labels: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
    pub edge_kinds: Vec<String>,
}

impl From<&OverlayGraph> for GraphDocument {
    fn from(g: &OverlayGraph) -> Self {
        GraphDocument {
            format_version: FORMAT_VERSION,
            params: g.params().into(),
            gamma: g.gamma(),
            labels: g.labels().to_vec(),
            edges: g.edges().iter().map(|&(u, v)| [u.0, v.0]).collect(),
            edge_kinds: g
                .edge_kinds()
                .iter()
                .map(|k| k.as_str().to_string())
                .collect(),
        }
    }
}

fn parse_kind(s: &str) -> CliResult<EdgeKind> {
    match s {
        "short_range" => Ok(EdgeKind::ShortRange),
        "long_range" => Ok(EdgeKind::LongRange),
        other => Err(CliError::Validation(format!("unknown edge kind `{other}`"))),
    }
}

impl GraphDocument {
    /// Rebuilds and validates the graph.
    ///
    /// Edges normally appear once as `u < v`. A list containing any `u > v`
    /// entry is read as directed arcs instead, and then every arc needs its
    /// reverse.
    pub fn to_graph(&self) -> CliResult<OverlayGraph> {
        if self.format_version != FORMAT_VERSION {
            return Err(CliError::Validation(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        if self.edge_kinds.len() != self.edges.len() {
            return Err(CliError::Validation(format!(
                "edge_kinds has {} entries for {} edges",
                self.edge_kinds.len(),
                self.edges.len()
            )));
        }
        let params = self.params.to_params()?;
        let kinds = self
            .edge_kinds
            .iter()
            .map(|k| parse_kind(k))
            .collect::<CliResult<Vec<_>>>()?;
        let edges: Vec<(NodeId, NodeId, EdgeKind)> = if self.edges.iter().any(|e| e[0] > e[1]) {
            let mut arcs: BTreeMap<(u32, u32), EdgeKind> = BTreeMap::new();
            for (e, &k) in self.edges.iter().zip(&kinds) {
                if arcs.insert((e[0], e[1]), k).is_some() {
                    return Err(CliError::Validation(format!(
                        "duplicate edge ({}, {})",
                        e[0], e[1]
                    )));
                }
            }
            for (&(u, v), &k) in &arcs {
                match arcs.get(&(v, u)) {
                    None => {
                        return Err(CliError::Validation(format!(
                            "asymmetric adjacency: ({u}, {v}) without ({v}, {u})"
                        )))
                    }
                    Some(&back) if back != k => {
                        return Err(CliError::Validation(format!(
                            "edge ({u}, {v}) has conflicting kinds"
                        )))
                    }
                    _ => {}
                }
            }
            arcs.into_iter()
                .filter(|((u, v), _)| u < v)
                .map(|((u, v), k)| (NodeId(u), NodeId(v), k))
                .collect()
        } else {
            self.edges
                .iter()
                .zip(kinds)
                .map(|(e, k)| (NodeId(e[0]), NodeId(e[1]), k))
                .collect()
        };
        OverlayGraph::from_edges(params, self.gamma, self.labels.clone(), edges)
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

pub fn to_json(graph: &OverlayGraph) -> String {
    let mut s = serde_json::to_string(&GraphDocument::from(graph))
        .expect("graph documents always serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> CliResult<OverlayGraph> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| CliError::Validation(e.to_string()))?;
    doc.to_graph()
}
