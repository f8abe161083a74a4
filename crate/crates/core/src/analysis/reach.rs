use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::ci::wilson_interval;
use super::estimators::{round_half_up, EstimatorReport};
use crate::error::{Error, Result};
use crate::model::{
    build_graph_with, calibrate_gamma, BuildOptions, GraphParams, NodeId, OverlayGraph,
    DEFAULT_GAMMA_TOL,
};
use crate::rng;

const PAIRS_PER_GRAPH: u64 = 100;

/// Whether `w` reaches `v` along a path whose distance to `v` strictly
/// drops at every hop. Such edges form a DAG toward `v`, searched
/// depth-first. `w == v` is trivially connected.
pub fn greedy_path_exists(graph: &OverlayGraph, w: NodeId, v: NodeId) -> bool {
    if w == v {
        return true;
    }
    let mut seen = vec![false; graph.n() as usize];
    let mut stack = vec![w];
    seen[w.index()] = true;
    while let Some(u) = stack.pop() {
        let here = graph.distance(u, v);
        for &x in graph.neighbors(u) {
            if x == v {
                return true;
            }
            if !seen[x.index()] && graph.distance(x, v) < here {
                seen[x.index()] = true;
                stack.push(x);
            }
        }
    }
    false
}

/// `C² ln n`, rounded half up.
pub fn greedy_threshold(n: u32, c: u32) -> u32 {
    round_half_up((c as f64) * (c as f64) * libm::log(n as f64))
}

/// Fraction of pairs at distance above `threshold` joined by a greedy path.
///
/// Pairs are uniform among ordered pairs with `dist > threshold`, drawn
/// [`PAIRS_PER_GRAPH`] at a time from fresh graphs whose seeds derive from
/// `params.seed`.
pub fn estimate_greedy_path_probability(
    params: &GraphParams,
    threshold: u32,
    trials: u64,
) -> Result<EstimatorReport> {
    params.validate()?;
    let n = params.n;
    if threshold >= n / 2 {
        return Err(Error::param(
            "threshold",
            format!("no pairs at distance > {threshold} on a ring of {n}"),
        ));
    }
    if trials == 0 {
        return Err(Error::param("trials", "must be positive"));
    }
    let gamma = calibrate_gamma(n, params.alpha, params.mu, DEFAULT_GAMMA_TOL)?;
    let options = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    let (mut done, mut hits, mut graph_index) = (0u64, 0u64, 0u64);
    while done < trials {
        let seed = rng::derive_seed(params.seed, 0x6772_6565_6479, graph_index);
        let graph = build_graph_with(&params.with_seed(seed), &options)?;
        let mut pairs = rng::stream(seed, rng::STREAM_ESTIMATOR);
        for _ in 0..PAIRS_PER_GRAPH.min(trials - done) {
            let w = pairs.random_range(0..n);
            let offset = pairs.random_range(threshold + 1..n - threshold);
            let v = (w + offset) % n;
            if greedy_path_exists(&graph, NodeId(w), NodeId(v)) {
                hits += 1;
            }
            done += 1;
        }
        graph_index += 1;
    }
    Ok(EstimatorReport {
        name: "greedy-path".to_string(),
        estimate: Some(hits as f64 / done as f64),
        ci95: Some(wilson_interval(hits, done)),
        samples: done,
        reference: None,
        parameters: Vec::from([
            ("threshold".to_string(), format!("{threshold}")),
            ("graphs".to_string(), format!("{graph_index}")),
        ]),
        graph: *params,
        diagnostic: None,
    })
}
