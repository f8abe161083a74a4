//! Estimator suites with pass/fail bands.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nextbest_core::analysis::{
    connectivity_check, estimate_greedy_path_probability, estimate_link_length_tail,
    greedy_threshold, sample_inward_links, wilson_interval, EstimatorReport, Z95,
};
use nextbest_core::model::{
    build_graph_with, calibrate_gamma, calibration_sum, generate_long_range_exact,
    generate_long_range_poisson, BuildOptions, LabelDistribution, DEFAULT_EXACT_CAP,
};
use nextbest_core::routing::{halving_statistics, HalvingOptions, HalvingProfile, Router};
use nextbest_core::{rng, AlgorithmKind, GeneratorKind, GraphParams, NodeId, RouteQuery};
use rand::Rng as _;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::graph_doc::{ParamsDoc, FORMAT_VERSION};
use crate::stats::spearman;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gamma,
    LinkTail,
    GreedyPath,
    InwardLinks,
    Halving,
    Connectivity,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Gamma,
        Suite::LinkTail,
        Suite::GreedyPath,
        Suite::InwardLinks,
        Suite::Halving,
        Suite::Connectivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::LinkTail => "link-tail",
            Suite::GreedyPath => "greedy-path",
            Suite::InwardLinks => "inward-links",
            Suite::Halving => "halving",
            Suite::Connectivity => "connectivity",
        }
    }

    /// Sample count used when `--trials` is absent.
    pub fn default_trials(self) -> u64 {
        match self {
            Suite::Gamma => 10_000,
            Suite::LinkTail => 100_000,
            Suite::GreedyPath => 1_000,
            Suite::InwardLinks => 50,
            Suite::Halving => 1_000,
            Suite::Connectivity => 100,
        }
    }

    /// Primary threshold of the band, replaceable by `--band`.
    pub fn default_band(self) -> f64 {
        match self {
            Suite::Gamma => 1e-10,
            Suite::LinkTail => 0.25,
            Suite::GreedyPath => 0.99,
            Suite::InwardLinks => 0.01,
            Suite::Halving => 0.0,
            Suite::Connectivity => 0.99,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.as_str()).collect();
                CliError::Usage(format!(
                    "unknown suite `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// Allowed distance between the link-tail estimate and its analytic value.
pub const LINK_TAIL_TOLERANCE: f64 = 0.05;
/// Width of the label-1 degree band, in standard errors.
pub const DEGREE_BAND_SE: f64 = 3.0;
/// Fewest graphs behind a label-1 degree estimate.
pub const GAMMA_MIN_GRAPHS: u64 = 10;
/// Queries per graph in the halving suite.
pub const HALVING_PAIRS_PER_GRAPH: u64 = 100;
/// Default `r` for the halving suite's lower cut `exp((ln n)^r)`.
pub const HALVING_DEFAULT_R: f64 = 0.5;
pub const INWARD_RADII: [u32; 4] = [4, 8, 16, 32];

#[derive(Debug, Clone)]
pub struct VerifyRequest {
    pub suite: Suite,
    pub params: GraphParams,
    pub trials: u64,
    pub band: f64,
    /// greedy-path only: minimum pair distance, exclusive.
    pub threshold: Option<u32>,
    /// halving only.
    pub r: Option<f64>,
}

impl VerifyRequest {
    pub fn new(suite: Suite, params: GraphParams) -> Self {
        VerifyRequest {
            suite,
            params,
            trials: suite.default_trials(),
            band: suite.default_band(),
            threshold: None,
            r: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Band {
    pub description: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub suite: Suite,
    pub report: EstimatorReport,
    pub band: Band,
}

/// On-disk form of a [`VerifyOutcome`].
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub suite: String,
    pub name: String,
    pub estimate: Option<f64>,
    pub ci95: Option<[f64; 2]>,
    pub samples: u64,
    pub reference: Option<f64>,
    pub parameters: BTreeMap<String, String>,
    pub graph: ParamsDoc,
    pub band: Band,
    pub diagnostic: Option<String>,
}

impl VerifyOutcome {
    pub fn document(&self) -> ReportDocument {
        let r = &self.report;
        ReportDocument {
            format_version: FORMAT_VERSION,
            suite: self.suite.as_str().to_string(),
            name: r.name.clone(),
            estimate: r.estimate,
            ci95: r.ci95.map(|(a, b)| [a, b]),
            samples: r.samples,
            reference: r.reference,
            parameters: r.parameters.iter().cloned().collect(),
            graph: (&r.graph).into(),
            band: self.band.clone(),
            diagnostic: r.diagnostic.clone(),
        }
    }

    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.report
            .parameters
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn run(request: &VerifyRequest) -> CliResult<VerifyOutcome> {
    request.params.validate()?;
    if request.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".to_string()));
    }
    match request.suite {
        Suite::Gamma => gamma(request),
        Suite::LinkTail => link_tail(request),
        Suite::GreedyPath => greedy_path(request),
        Suite::InwardLinks => inward_links(request),
        Suite::Halving => halving(request),
        Suite::Connectivity => connectivity(request),
    }
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Calibration residual plus the mean long-range degree of label-1 nodes,
/// read from raw generator output over fresh label draws.
fn gamma(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let p = req.params;
    let tol = req.band;
    let law = LabelDistribution::new(p.alpha, p.mu)?;
    let gamma = calibrate_gamma(p.n, p.alpha, p.mu, tol)?;
    let residual = (calibration_sum(p.n, &law, gamma) - 1.0).abs();

    // (label-1 nodes, their degree sum) per graph
    let mut per_graph: Vec<(u64, u64)> = Vec::new();
    let mut count = 0u64;
    while count < req.trials || (per_graph.len() as u64) < GAMMA_MIN_GRAPHS {
        let seed = rng::derive_seed(p.seed, 0x0067_616d_6d61, per_graph.len() as u64);
        let mut label_rng = rng::stream(seed, rng::STREAM_LABELS);
        let labels: Vec<u32> = (0..p.n).map(|_| law.sample(&mut label_rng)).collect();
        let edges = match p.generator {
            GeneratorKind::Exact => generate_long_range_exact(
                &labels,
                gamma,
                &mut rng::stream(seed, rng::STREAM_LONG_RANGE_EXACT),
                DEFAULT_EXACT_CAP,
            )?,
            GeneratorKind::Poisson => generate_long_range_poisson(
                &labels,
                p.mu,
                gamma,
                &mut rng::stream(seed, rng::STREAM_LONG_RANGE_POISSON),
            )?,
        };
        let mut degree = vec![0u64; p.n as usize];
        for (u, v) in edges {
            degree[u.index()] += 1;
            degree[v.index()] += 1;
        }
        let (mut k, mut s) = (0u64, 0u64);
        for (v, &l) in labels.iter().enumerate() {
            if l == 1 {
                k += 1;
                s += degree[v];
            }
        }
        per_graph.push((k, s));
        count += k;
    }
    let graphs = per_graph.len() as f64;
    let mean = per_graph.iter().map(|g| g.1).sum::<u64>() as f64 / count as f64;
    // Nodes of one graph share the other nodes' labels, so the error is
    // estimated between graphs (ratio estimator), not between nodes.
    let spread: f64 = per_graph
        .iter()
        .map(|&(k, s)| (s as f64 - mean * k as f64).powi(2))
        .sum();
    let se = (graphs / (graphs - 1.0) * spread).sqrt() / count as f64;
    let degree_ok = (mean - 1.0).abs() <= DEGREE_BAND_SE * se;
    let passed = residual <= tol && degree_ok;
    Ok(VerifyOutcome {
        suite: req.suite,
        report: EstimatorReport {
            name: "label-one-degree".to_string(),
            estimate: Some(mean),
            ci95: Some((mean - Z95 * se, mean + Z95 * se)),
            samples: count,
            reference: Some(1.0),
            parameters: vec![
                kv("gamma", gamma),
                kv("residual", residual),
                kv("tol", tol),
                kv("standard_error", se),
                kv("graphs", per_graph.len()),
            ],
            graph: p,
            diagnostic: None,
        },
        band: Band {
            description: format!(
                "|F(gamma) - 1| = {residual:.3e} <= {tol:e} and |mean - 1| <= {DEGREE_BAND_SE} SE"
            ),
            passed,
        },
    })
}

fn link_tail(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let report = estimate_link_length_tail(&req.params, req.trials)?;
    let floor = req.band;
    let passed = match (report.estimate, report.reference) {
        (Some(e), Some(r)) => e >= floor && (e - r).abs() <= LINK_TAIL_TOLERANCE,
        _ => false,
    };
    Ok(VerifyOutcome {
        suite: req.suite,
        band: Band {
            description: format!(
                "fraction >= {floor} and within {LINK_TAIL_TOLERANCE} of the analytic value"
            ),
            passed,
        },
        report,
    })
}

fn greedy_path(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let p = req.params;
    let threshold = req.threshold.unwrap_or_else(|| greedy_threshold(p.n, p.c));
    let report = estimate_greedy_path_probability(&p, threshold, req.trials)?;
    let floor = req.band;
    let passed = report.estimate.is_some_and(|e| e >= floor);
    Ok(VerifyOutcome {
        suite: req.suite,
        band: Band {
            description: format!("fraction >= {floor} at distance > {threshold}"),
            passed,
        },
        report,
    })
}

fn inward_links(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let p = req.params;
    let outer = nextbest_core::analysis::round_half_up((p.n as f64).sqrt());
    let radii: Vec<u32> = INWARD_RADII
        .iter()
        .copied()
        .filter(|&d| d < outer)
        .collect();
    if radii.len() < 2 {
        return Err(CliError::Usage(format!(
            "n = {} leaves fewer than two radii below round(sqrt(n)) = {outer}",
            p.n
        )));
    }
    let samples = sample_inward_links(&p, &radii, req.trials)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut means = vec![0.0; radii.len()];
    for s in &samples {
        for (k, (&d, &c)) in radii.iter().zip(&s.counts).enumerate() {
            xs.push(d as f64);
            ys.push(c as f64);
            means[k] += c as f64 / samples.len() as f64;
        }
    }
    let test = spearman(&xs, &ys);
    let level = req.band;
    let passed = test.statistic > 0.0 && test.p_value < level;
    let mut parameters = vec![kv("p_value", test.p_value), kv("graphs", samples.len())];
    for (d, m) in radii.iter().zip(&means) {
        parameters.push(kv(&format!("mean_d{d:02}"), m));
    }
    Ok(VerifyOutcome {
        suite: req.suite,
        report: EstimatorReport {
            name: "inward-links-spearman".to_string(),
            estimate: Some(test.statistic),
            ci95: None,
            samples: xs.len() as u64,
            reference: None,
            parameters,
            graph: p,
            diagnostic: None,
        },
        band: Band {
            description: format!("Spearman rho > 0 with p < {level}"),
            passed,
        },
    })
}

/// Halving profiles of NBO and NoN on the same graphs and pairs.
pub fn halving_profiles(
    params: &GraphParams,
    queries: u64,
    options: &HalvingOptions,
) -> CliResult<(HalvingProfile, HalvingProfile)> {
    let law = LabelDistribution::new(params.alpha, params.mu)?;
    let gamma = nextbest_core::model::calibrate_gamma_for(
        params.n,
        &law,
        nextbest_core::model::DEFAULT_GAMMA_TOL,
    )?;
    let build = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    let mut nbo = Vec::new();
    let mut non = Vec::new();
    let mut graph_index = 0;
    while (nbo.len() as u64) < queries {
        let seed = rng::derive_seed(params.seed, 0x6861_6c76, graph_index);
        graph_index += 1;
        let graph = build_graph_with(&params.with_seed(seed), &build)?;
        let mut router = Router::new(&graph);
        let mut pairs = rng::stream(seed, rng::STREAM_PAIRS);
        for _ in 0..HALVING_PAIRS_PER_GRAPH.min(queries - nbo.len() as u64) {
            let s = NodeId(pairs.random_range(0..params.n));
            let t = NodeId(pairs.random_range(0..params.n));
            nbo.push(router.route(&RouteQuery::new(s, t, AlgorithmKind::NextBestOnce))?);
            non.push(router.route(&RouteQuery::new(s, t, AlgorithmKind::NextBestOnceNoN))?);
        }
    }
    Ok((
        halving_statistics(&nbo, params.n, options),
        halving_statistics(&non, params.n, options),
    ))
}

fn pooled(profile: &HalvingProfile) -> (u64, u64) {
    profile
        .bins
        .iter()
        .fold((0, 0), |(h, t), b| (h + b.halved, t + b.trials))
}

fn halving(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let p = req.params;
    let r = req.r.unwrap_or(HALVING_DEFAULT_R);
    let options = HalvingOptions {
        r: Some(r),
        min_samples: 1,
    };
    let (nbo, non) = halving_profiles(&p, req.trials, &options)?;
    let (nbo_h, nbo_t) = pooled(&nbo);
    let (non_h, non_t) = pooled(&non);
    let defined = nbo_t > 0 && non_t > 0;
    let nbo_f = defined.then(|| nbo_h as f64 / nbo_t as f64);
    let non_f = defined.then(|| non_h as f64 / non_t as f64);
    let margin = req.band;
    let passed = matches!((non_f, nbo_f), (Some(a), Some(b)) if a > b + margin);
    let mut parameters = vec![
        kv("r", r),
        kv("min_distance", nbo.min_distance.unwrap_or(0.0)),
        kv("nbo_observations", nbo_t),
    ];
    for b in &non.bins {
        if let (Some(f), Some(g)) = (
            b.frequency,
            nbo.bin_containing(b.lower).and_then(|x| x.frequency),
        ) {
            parameters.push(kv(
                &format!("bin_{:06}", b.lower),
                format!("non {f:.4} nbo {g:.4}"),
            ));
        }
    }
    Ok(VerifyOutcome {
        suite: req.suite,
        report: EstimatorReport {
            name: "halving-frequency".to_string(),
            estimate: non_f,
            ci95: defined.then(|| wilson_interval(non_h, non_t)),
            samples: non_t,
            reference: nbo_f,
            parameters,
            graph: p,
            diagnostic: (!defined).then(|| "no X values above the distance cut".to_string()),
        },
        band: Band {
            description: format!("NoN halving frequency exceeds NBO by more than {margin}"),
            passed,
        },
    })
}

fn connectivity(req: &VerifyRequest) -> CliResult<VerifyOutcome> {
    let p = req.params;
    let law = LabelDistribution::new(p.alpha, p.mu)?;
    let gamma = nextbest_core::model::calibrate_gamma_for(
        p.n,
        &law,
        nextbest_core::model::DEFAULT_GAMMA_TOL,
    )?;
    let build = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    let mut connected = 0u64;
    let mut smallest_giant = p.n;
    for g in 0..req.trials {
        let seed = rng::derive_seed(p.seed, 0x636f_6e6e, g);
        let check = connectivity_check(&build_graph_with(&p.with_seed(seed), &build)?);
        connected += check.connected as u64;
        smallest_giant = smallest_giant.min(check.component_sizes[0]);
    }
    let fraction = connected as f64 / req.trials as f64;
    let floor = req.band;
    Ok(VerifyOutcome {
        suite: req.suite,
        report: EstimatorReport {
            name: "connected-fraction".to_string(),
            estimate: Some(fraction),
            ci95: Some(wilson_interval(connected, req.trials)),
            samples: req.trials,
            reference: None,
            parameters: vec![
                kv("gamma", gamma),
                kv("smallest_giant_component", smallest_giant),
            ],
            graph: p,
            diagnostic: None,
        },
        band: Band {
            description: format!("connected fraction >= {floor}"),
            passed: fraction >= floor,
        },
    })
}
