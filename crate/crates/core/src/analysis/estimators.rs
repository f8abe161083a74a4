use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use super::ci::wilson_interval;
use crate::error::{Error, Result};
use crate::model::{
    build_graph_with, calibrate_gamma_for, long_range_probability, pair_count, BallSpec,
    BuildOptions, EdgeKind, GraphParams, LabelDistribution, NodeId, OverlayGraph,
    DEFAULT_GAMMA_TOL,
};
use crate::rng;

/// Upper bound on graphs one estimator run may build.
const MAX_GRAPHS: u64 = 100_000;

/// Outcome of one estimator run, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorReport {
    pub name: String,
    /// `None` when the estimator had nothing to measure.
    pub estimate: Option<f64>,
    pub ci95: Option<(f64, f64)>,
    pub samples: u64,
    /// Analytic value the estimate is compared with, when one exists.
    pub reference: Option<f64>,
    pub parameters: Vec<(String, String)>,
    pub graph: GraphParams,
    pub diagnostic: Option<String>,
}

impl EstimatorReport {
    pub fn half_width(&self) -> Option<f64> {
        self.ci95.map(|(lo, hi)| 0.5 * (hi - lo))
    }
}

/// Nearest integer, halves rounded up.
pub fn round_half_up(x: f64) -> u32 {
    libm::floor(x + 0.5) as u32
}

/// `P(dist >= round(2√n) | long-range edge)` by direct summation.
///
/// Marginalizes both labels over the truncated law and weights distance `d`
/// by its pair count. A long-range pair at `d <= C` coincides with a
/// short-range link with probability `1 - (1 - 1/C)²` and is then tagged
/// short-range, so those distances are down-weighted accordingly.
pub fn analytic_link_length_tail(params: &GraphParams, gamma: f64) -> Result<f64> {
    let law = LabelDistribution::new(params.alpha, params.mu)?;
    let n = params.n;
    let cutoff = round_half_up(2.0 * libm::sqrt(n as f64));
    let pmf = law.probabilities();
    let keep_short = {
        let miss = 1.0 - 1.0 / params.c as f64;
        miss * miss
    };
    let (mut tail, mut total) = (0.0f64, 0.0f64);
    for d in 1..=n / 2 {
        let mut link = 0.0;
        for (i, p) in pmf.iter().enumerate() {
            for (j, q) in pmf.iter().enumerate() {
                link += p * q * long_range_probability(i as u32 + 1, j as u32 + 1, d, gamma)?;
            }
        }
        let mut w = pair_count(n, d) as f64 * link;
        if d <= params.c {
            w *= keep_short;
        }
        total += w;
        if d >= cutoff {
            tail += w;
        }
    }
    Ok(tail / total)
}

/// Fraction of long-range edges of length at least `round(2√n)`, over
/// fresh graphs until `trials` long-range edges have been seen.
pub fn estimate_link_length_tail(params: &GraphParams, trials: u64) -> Result<EstimatorReport> {
    params.validate()?;
    if params.n < 16 {
        return Err(Error::param("n", "needs n >= 16"));
    }
    let law = LabelDistribution::new(params.alpha, params.mu)?;
    let gamma = calibrate_gamma_for(params.n, &law, DEFAULT_GAMMA_TOL)?;
    let options = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    let cutoff = round_half_up(2.0 * libm::sqrt(params.n as f64));
    let reference = analytic_link_length_tail(params, gamma)?;

    let (mut edges, mut long, mut graphs) = (0u64, 0u64, 0u64);
    let mut diagnostic = None;
    while edges < trials.max(1) && graphs < MAX_GRAPHS {
        let seed = rng::derive_seed(params.seed, 0x7461_696c, graphs);
        let graph = build_graph_with(&params.with_seed(seed), &options)?;
        graphs += 1;
        let before = edges;
        for (&(u, v), &kind) in graph.edges().iter().zip(graph.edge_kinds()) {
            if kind == EdgeKind::LongRange {
                edges += 1;
                if graph.distance(u, v) >= cutoff {
                    long += 1;
                }
            }
        }
        if edges == before {
            diagnostic = Some(format!(
                "graph {graphs} (seed {seed}) has no long-range edges; estimate undefined"
            ));
            break;
        }
    }
    let defined = diagnostic.is_none() && edges > 0;
    Ok(EstimatorReport {
        name: "link-tail".to_string(),
        estimate: defined.then(|| long as f64 / edges as f64),
        ci95: defined.then(|| wilson_interval(long, edges)),
        samples: edges,
        reference: Some(reference),
        parameters: Vec::from([
            ("cutoff".to_string(), format!("{cutoff}")),
            ("gamma".to_string(), format!("{gamma}")),
            ("graphs".to_string(), format!("{graphs}")),
        ]),
        graph: *params,
        diagnostic,
    })
}

/// Nodes at distance at least `round(√n)` from `t` with a long-range
/// neighbor inside the open ball `B_d(t)`.
pub fn estimate_inward_links(graph: &OverlayGraph, t: NodeId, d: u32) -> Result<u64> {
    let n = graph.n();
    let outer = round_half_up(libm::sqrt(n as f64));
    if d >= outer {
        return Err(Error::param(
            "d",
            format!("radius {d} must stay below round(sqrt(n)) = {outer}"),
        ));
    }
    if t.0 >= n {
        return Err(Error::param("t", format!("{t} outside 0..{n}")));
    }
    let mut found: Vec<NodeId> = BallSpec::new(t, d)
        .members(n)
        .flat_map(|w| graph.neighbors_with_kind(w))
        .filter(|&(u, kind)| kind == EdgeKind::LongRange && graph.distance(u, t) >= outer)
        .map(|(u, _)| u)
        .collect();
    found.sort_unstable();
    found.dedup();
    Ok(found.len() as u64)
}

/// One graph's inward-link counts, one per requested radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InwardLinkSample {
    pub seed: u64,
    pub target: NodeId,
    pub counts: Vec<u64>,
}

/// Builds `graphs` fresh graphs, picks a uniform target in each and counts
/// inward links for every radius.
pub fn sample_inward_links(
    params: &GraphParams,
    radii: &[u32],
    graphs: u64,
) -> Result<Vec<InwardLinkSample>> {
    params.validate()?;
    let law = LabelDistribution::new(params.alpha, params.mu)?;
    let gamma = calibrate_gamma_for(params.n, &law, DEFAULT_GAMMA_TOL)?;
    let options = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    (0..graphs)
        .map(|i| {
            let seed = rng::derive_seed(params.seed, 0x696e_7761_7264, i);
            let graph = build_graph_with(&params.with_seed(seed), &options)?;
            let target = NodeId(rng::stream(seed, rng::STREAM_ESTIMATOR).random_range(0..params.n));
            let counts = radii
                .iter()
                .map(|&d| estimate_inward_links(&graph, target, d))
                .collect::<Result<_>>()?;
            Ok(InwardLinkSample {
                seed,
                target,
                counts,
            })
        })
        .collect()
}
