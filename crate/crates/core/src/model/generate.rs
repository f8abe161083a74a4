use alloc::format;
use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Poisson;

use super::calibrate::{calibrate_gamma_for, pair_count, DEFAULT_GAMMA_TOL};
use super::graph::{EdgeKind, OverlayGraph};
use super::labels::LabelDistribution;
use super::params::{GeneratorKind, GraphParams};
use super::ring::{ring_distance, NodeId};
use crate::error::{Error, Result};
use crate::rng;

/// Largest `n` the quadratic generator accepts unless overridden.
pub const DEFAULT_EXACT_CAP: u32 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    pub exact_cap: u32,
    pub gamma_tol: f64,
    /// Skip calibration and use this γ. Must come from the same `(n, α, μ)`.
    pub gamma: Option<f64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            exact_cap: DEFAULT_EXACT_CAP,
            gamma_tol: DEFAULT_GAMMA_TOL,
            gamma: None,
        }
    }
}

/// The two short-range picks of one node: `up` from `{v+1, …, v+C}` and
/// `down` from `{v-C, …, v-1}`, both mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortRangeChoice {
    pub up: NodeId,
    pub down: NodeId,
}

/// Per-node uniform choices; two draws per node in ascending node order.
pub fn sample_short_range_choices<R: Rng + ?Sized>(
    n: u32,
    c: u32,
    rng: &mut R,
) -> Vec<ShortRangeChoice> {
    (0..n)
        .map(|v| {
            let up = rng.random_range(1..=c);
            let down = rng.random_range(1..=c);
            ShortRangeChoice {
                up: NodeId((v + up) % n),
                down: NodeId((v + n - down) % n),
            }
        })
        .collect()
}

/// Undirected union of all short-range picks, canonical and deduplicated.
pub fn generate_short_range<R: Rng + ?Sized>(
    params: &GraphParams,
    rng: &mut R,
) -> Vec<(NodeId, NodeId)> {
    let choices = sample_short_range_choices(params.n, params.c, rng);
    let mut edges = Vec::with_capacity(2 * choices.len());
    for (v, choice) in choices.iter().enumerate() {
        let v = NodeId(v as u32);
        edges.push(canonical(v, choice.up));
        edges.push(canonical(v, choice.down));
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Includes every pair `{u, v}` independently with probability
/// `1 - exp(-l_u l_v / (dist(u, v) γ))`. One uniform draw per pair, pairs
/// visited row-major with `u < v`.
pub fn generate_long_range_exact<R: Rng + ?Sized>(
    labels: &[u32],
    gamma: f64,
    rng: &mut R,
    cap: u32,
) -> Result<Vec<(NodeId, NodeId)>> {
    let n = labels.len() as u32;
    if n > cap {
        return Err(Error::ExactGeneratorCap { n, cap });
    }
    let inv: Vec<f64> = (0..=n / 2)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                1.0 / (d as f64 * gamma)
            }
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        let lu = labels[u as usize] as f64;
        for v in u + 1..n {
            let d = ring_distance(NodeId(u), NodeId(v), n);
            let p = -libm::expm1(-lu * labels[v as usize] as f64 * inv[d as usize]);
            if rng.random::<f64>() < p {
                edges.push((NodeId(u), NodeId(v)));
            }
        }
    }
    Ok(edges)
}

/// Same edge law as [`generate_long_range_exact`] in expected
/// `O(n μ² log n / γ + n)` time.
///
/// Each pair carries an independent Poisson count of rate
/// `λ_uv = l_u l_v / (d γ)` and is an edge iff the count is positive. The
/// counts are produced by thinning a dominating process of rate
/// `μ² / (d γ)` per pair: draw the total from `Poisson(Λ)`, then per event a
/// distance `d ∝ pairs(d) / d`, a uniform origin and a uniform direction,
/// and keep the event with probability `l_u l_v / μ²`.
pub fn generate_long_range_poisson<R: Rng + ?Sized>(
    labels: &[u32],
    mu: u32,
    gamma: f64,
    rng: &mut R,
) -> Result<Vec<(NodeId, NodeId)>> {
    let n = labels.len() as u32;
    if let Some(&l) = labels.iter().find(|&&l| l < 1 || l > mu) {
        return Err(Error::param(
            "labels",
            format!("label {l} outside 1..={mu}"),
        ));
    }
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::param("gamma", "must be positive"));
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let weights: Vec<f64> = (1..=n / 2)
        .map(|d| pair_count(n, d) as f64 / d as f64)
        .collect();
    let total_weight: f64 = weights.iter().sum();
    let mu2 = mu as u64 * mu as u64;
    let envelope = mu2 as f64 / gamma * total_weight;
    if envelope.is_nan() || envelope <= 0.0 || envelope.is_infinite() {
        return Ok(Vec::new());
    }
    let count = Poisson::new(envelope)
        .map_err(|e| Error::Numerical(format!("poisson envelope {envelope}: {e}")))?
        .sample(rng) as u64;
    let distance = WeightedIndex::new(&weights)
        .map_err(|e| Error::Numerical(format!("distance table: {e}")))?;

    let mut edges = Vec::new();
    for _ in 0..count {
        let d = distance.sample(rng) as u32 + 1;
        let u = rng.random_range(0..n);
        let v = if rng.random::<bool>() {
            (u + d) % n
        } else {
            (u + n - d) % n
        };
        let weight = labels[u as usize] as u64 * labels[v as usize] as u64;
        if rng.random_range(0..mu2) < weight {
            edges.push(canonical(NodeId(u), NodeId(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Calibrates γ, draws labels and both edge families, and merges them.
/// A pair chosen by both families is kept once, tagged short-range.
pub fn build_graph(params: &GraphParams) -> Result<OverlayGraph> {
    build_graph_with(params, &BuildOptions::default())
}

pub fn build_graph_with(params: &GraphParams, options: &BuildOptions) -> Result<OverlayGraph> {
    params.validate()?;
    if params.generator == GeneratorKind::Exact && params.n > options.exact_cap {
        return Err(Error::ExactGeneratorCap {
            n: params.n,
            cap: options.exact_cap,
        });
    }
    let law = LabelDistribution::new(params.alpha, params.mu)?;
    let gamma = match options.gamma {
        Some(g) => g,
        None => calibrate_gamma_for(params.n, &law, options.gamma_tol)?,
    };

    let mut label_rng = rng::stream(params.seed, rng::STREAM_LABELS);
    let labels: Vec<u32> = (0..params.n).map(|_| law.sample(&mut label_rng)).collect();

    let short = generate_short_range(
        params,
        &mut rng::stream(params.seed, rng::STREAM_SHORT_RANGE),
    );
    let long = match params.generator {
        GeneratorKind::Exact => generate_long_range_exact(
            &labels,
            gamma,
            &mut rng::stream(params.seed, rng::STREAM_LONG_RANGE_EXACT),
            options.exact_cap,
        )?,
        GeneratorKind::Poisson => generate_long_range_poisson(
            &labels,
            params.mu,
            gamma,
            &mut rng::stream(params.seed, rng::STREAM_LONG_RANGE_POISSON),
        )?,
    };

    let mut merged: Vec<(NodeId, NodeId, EdgeKind)> = Vec::with_capacity(short.len() + long.len());
    let (mut i, mut j) = (0, 0);
    while i < short.len() || j < long.len() {
        match (short.get(i), long.get(j)) {
            (Some(&s), Some(&l)) if s == l => {
                merged.push((s.0, s.1, EdgeKind::ShortRange));
                i += 1;
                j += 1;
            }
            (Some(&s), Some(&l)) if s < l => {
                merged.push((s.0, s.1, EdgeKind::ShortRange));
                i += 1;
            }
            (Some(&s), None) => {
                merged.push((s.0, s.1, EdgeKind::ShortRange));
                i += 1;
            }
            (_, Some(&l)) => {
                merged.push((l.0, l.1, EdgeKind::LongRange));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(OverlayGraph::assemble(*params, gamma, labels, merged))
}

#[inline]
fn canonical(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
