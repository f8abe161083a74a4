use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::ci::HopStats;
use super::connectivity::component_ids;
use crate::error::{Error, Result};
use crate::model::{
    build_graph_with, calibrate_gamma, BuildOptions, GeneratorKind, GraphParams, NodeId,
    DEFAULT_GAMMA_TOL,
};
use crate::rng;
use crate::routing::{AlgorithmKind, Outcome, RouteQuery, Router};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuRule {
    Explicit(u32),
    /// `max(2, ceil(log2 n))`.
    Log2OfN,
}

impl MuRule {
    pub fn resolve(self, n: u32) -> u32 {
        match self {
            MuRule::Explicit(mu) => mu,
            MuRule::Log2OfN => GraphParams::default_mu(n),
        }
    }
}

/// Parameter sweep. Cells are the cross product `n × C × α` in that
/// nesting order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_values: Vec<u32>,
    pub c_values: Vec<u32>,
    pub alpha_values: Vec<f64>,
    pub mu_rule: MuRule,
    pub algorithms: Vec<AlgorithmKind>,
    pub graphs_per_cell: u32,
    pub pairs_per_graph: u32,
    pub base_seed: u64,
    pub generator: GeneratorKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub n: u32,
    pub c: u32,
    pub alpha: f64,
    pub mu: u32,
}

/// One independent piece of work: a single graph of a single cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkUnit {
    pub cell: usize,
    pub graph: u32,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.c_values.is_empty() || self.alpha_values.is_empty() {
            return Err(Error::param(
                "config",
                "n_values, c_values and alpha_values must be non-empty",
            ));
        }
        if self.algorithms.is_empty() {
            return Err(Error::param(
                "algorithms",
                "at least one algorithm is required",
            ));
        }
        if self.graphs_per_cell == 0 || self.pairs_per_graph == 0 {
            return Err(Error::param(
                "config",
                "graphs_per_cell and pairs_per_graph must be at least 1",
            ));
        }
        for cell in self.cells() {
            self.params_for(&cell, 0).validate().map_err(|e| match e {
                Error::Parameter { name, reason } => Error::Parameter {
                    name,
                    reason: format!(
                        "{reason} (cell n = {}, C = {}, alpha = {})",
                        cell.n, cell.c, cell.alpha
                    ),
                },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &n in &self.n_values {
            for &c in &self.c_values {
                for &alpha in &self.alpha_values {
                    let index = cells.len();
                    cells.push(Cell {
                        index,
                        n,
                        c,
                        alpha,
                        mu: self.mu_rule.resolve(n),
                    });
                }
            }
        }
        cells
    }

    /// Units in canonical order: cell-major, then graph index.
    pub fn work_units(&self) -> Vec<WorkUnit> {
        let cells = self.cells().len();
        (0..cells)
            .flat_map(|cell| (0..self.graphs_per_cell).map(move |graph| WorkUnit { cell, graph }))
            .collect()
    }

    /// Seed of graph `graph` in `cell`; pairs come from its
    /// [`STREAM_PAIRS`](crate::rng::STREAM_PAIRS).
    pub fn graph_seed(&self, cell: usize, graph: u32) -> u64 {
        rng::derive_seed(self.base_seed, cell as u64, graph as u64)
    }

    pub fn params_for(&self, cell: &Cell, graph: u32) -> GraphParams {
        GraphParams {
            n: cell.n,
            c: cell.c,
            alpha: cell.alpha,
            mu: cell.mu,
            seed: self.graph_seed(cell.index, graph),
            generator: self.generator,
        }
    }
}

/// Per-algorithm tallies for one unit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgorithmTally {
    pub trials: u64,
    pub successes: u64,
    pub aborted: u64,
    pub hops: HopStats,
    pub forward: HopStats,
    pub backtrack: HopStats,
    /// Total hops of each successful route, in query order.
    pub success_hops: Vec<u64>,
    /// `(source, target)` of every routed query, in order.
    pub routed: Vec<(NodeId, NodeId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitOutcome {
    pub unit: WorkUnit,
    pub graph_seed: u64,
    pub connected: bool,
    pub disconnected_pairs: u64,
    /// Parallel to `ExperimentConfig::algorithms`.
    pub tallies: Vec<AlgorithmTally>,
}

/// Calibrated γ per cell.
pub fn calibrate_cells(config: &ExperimentConfig) -> Result<Vec<f64>> {
    config
        .cells()
        .iter()
        .map(|c| calibrate_gamma(c.n, c.alpha, c.mu, DEFAULT_GAMMA_TOL))
        .collect()
}

/// Builds one graph, samples its pairs and routes each pair with every
/// algorithm. Pure in `(config, unit, gamma)`.
pub fn run_unit(config: &ExperimentConfig, unit: WorkUnit, gamma: f64) -> Result<UnitOutcome> {
    let cell = config.cells()[unit.cell];
    let params = config.params_for(&cell, unit.graph);
    let options = BuildOptions {
        gamma: Some(gamma),
        ..BuildOptions::default()
    };
    let graph = build_graph_with(&params, &options)?;
    let components = component_ids(&graph);
    let connected = components.iter().all(|&c| c == 0);

    let mut pairs = rng::stream(params.seed, rng::STREAM_PAIRS);
    let mut router = Router::new(&graph);
    let mut tallies = alloc::vec![AlgorithmTally::default(); config.algorithms.len()];
    let mut disconnected_pairs = 0;
    for _ in 0..config.pairs_per_graph {
        let s = pairs.random_range(0..cell.n);
        let mut t = pairs.random_range(0..cell.n - 1);
        if t >= s {
            t += 1;
        }
        let (s, t) = (NodeId(s), NodeId(t));
        if components[s.index()] != components[t.index()] {
            disconnected_pairs += 1;
            continue;
        }
        for (tally, &algorithm) in tallies.iter_mut().zip(&config.algorithms) {
            let trace = router.route(&RouteQuery::new(s, t, algorithm))?;
            tally.trials += 1;
            tally.routed.push((s, t));
            match trace.outcome {
                Outcome::Success => {
                    tally.successes += 1;
                    tally.hops.push(trace.total_hops());
                    tally.forward.push(trace.forward_hops);
                    tally.backtrack.push(trace.backtrack_hops);
                    tally.success_hops.push(trace.total_hops());
                }
                Outcome::Aborted => tally.aborted += 1,
                Outcome::Failure => {}
            }
        }
    }
    Ok(UnitOutcome {
        unit,
        graph_seed: params.seed,
        connected,
        disconnected_pairs,
        tallies,
    })
}

/// One output row per `(cell, algorithm)`. Means are over successful
/// routes and are `None` when there were none.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub n: u32,
    pub c: u32,
    pub alpha: f64,
    pub mu: u32,
    pub algorithm: AlgorithmKind,
    pub generator: GeneratorKind,
    pub trials: u64,
    pub success_rate: f64,
    pub mean_hops: Option<f64>,
    pub ci95: Option<f64>,
    pub mean_forward: Option<f64>,
    pub mean_backtrack: Option<f64>,
    pub successes: u64,
    pub aborted: u64,
    pub disconnected_pairs: u64,
    pub disconnected_graphs: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub units: Vec<UnitOutcome>,
}

impl ExperimentResult {
    pub fn row(&self, n: u32, c: u32, alpha: f64, algorithm: AlgorithmKind) -> Option<&ResultRow> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.c == c && r.alpha == alpha && r.algorithm == algorithm)
    }

    /// `(graph_seed, source, target)` triples `algorithm_index` routed in
    /// `cell`, in execution order.
    pub fn audit_triples(&self, cell: usize, algorithm_index: usize) -> Vec<(u64, NodeId, NodeId)> {
        self.units
            .iter()
            .filter(|u| u.unit.cell == cell)
            .flat_map(|u| {
                u.tallies[algorithm_index]
                    .routed
                    .iter()
                    .map(move |&(s, t)| (u.graph_seed, s, t))
            })
            .collect()
    }
}

/// Folds unit outcomes, which must be in [`ExperimentConfig::work_units`]
/// order, into one row per `(cell, algorithm)`.
pub fn aggregate(config: &ExperimentConfig, units: Vec<UnitOutcome>) -> Result<ExperimentResult> {
    let cells = config.cells();
    let expected = config.work_units();
    if units.len() != expected.len() || units.iter().zip(&expected).any(|(u, e)| u.unit != *e) {
        return Err(Error::param(
            "units",
            "outcomes do not match the configured work units",
        ));
    }
    let mut rows = Vec::with_capacity(cells.len() * config.algorithms.len());
    for cell in &cells {
        let in_cell: Vec<&UnitOutcome> =
            units.iter().filter(|u| u.unit.cell == cell.index).collect();
        let disconnected_pairs = in_cell.iter().map(|u| u.disconnected_pairs).sum();
        let disconnected_graphs = in_cell.iter().filter(|u| !u.connected).count() as u64;
        for (k, &algorithm) in config.algorithms.iter().enumerate() {
            let mut total = AlgorithmTally::default();
            for u in &in_cell {
                let t = &u.tallies[k];
                total.trials += t.trials;
                total.successes += t.successes;
                total.aborted += t.aborted;
                total.hops.merge(&t.hops);
                total.forward.merge(&t.forward);
                total.backtrack.merge(&t.backtrack);
            }
            let estimate = total.hops.estimate();
            rows.push(ResultRow {
                n: cell.n,
                c: cell.c,
                alpha: cell.alpha,
                mu: cell.mu,
                algorithm,
                generator: config.generator,
                trials: total.trials,
                success_rate: if total.trials == 0 {
                    0.0
                } else {
                    total.successes as f64 / total.trials as f64
                },
                mean_hops: estimate.map(|e| e.mean),
                ci95: estimate.map(|e| e.half_width).filter(|h| !h.is_nan()),
                mean_forward: total.forward.mean(),
                mean_backtrack: total.backtrack.mean(),
                successes: total.successes,
                aborted: total.aborted,
                disconnected_pairs,
                disconnected_graphs,
            });
        }
    }
    Ok(ExperimentResult { rows, units })
}

/// Serial reference run. Parallel drivers must call [`run_unit`] for the
/// same units and hand the outcomes to [`aggregate`] in the same order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let gammas = calibrate_cells(config)?;
    let units = config
        .work_units()
        .into_iter()
        .map(|unit| run_unit(config, unit, gammas[unit.cell]))
        .collect::<Result<Vec<_>>>()?;
    aggregate(config, units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn config() -> ExperimentConfig {
        ExperimentConfig {
            n_values: vec![256, 512],
            c_values: vec![1, 2],
            alpha_values: vec![2.5],
            mu_rule: MuRule::Log2OfN,
            algorithms: AlgorithmKind::ALL.to_vec(),
            graphs_per_cell: 2,
            pairs_per_graph: 20,
            base_seed: 42,
            generator: GeneratorKind::Poisson,
        }
    }

    #[test]
    fn deterministic_and_complete() {
        let a = run_experiment(&config()).unwrap();
        let b = run_experiment(&config()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 4 * 4);
        for row in &a.rows {
            assert!((0.0..=1.0).contains(&row.success_rate));
            if let (Some(m), Some(f), Some(bk)) =
                (row.mean_hops, row.mean_forward, row.mean_backtrack)
            {
                assert!((m - (f + bk)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn paired_design() {
        let r = run_experiment(&config()).unwrap();
        for cell in 0..4 {
            let first = r.audit_triples(cell, 0);
            assert_eq!(first.len(), 40);
            for k in 1..4 {
                assert_eq!(r.audit_triples(cell, k), first);
            }
        }
    }

    #[test]
    fn validation() {
        let mut c = config();
        c.algorithms.clear();
        assert!(c.validate().is_err());
        let mut c = config();
        c.c_values = vec![100];
        assert!(c
            .validate()
            .unwrap_err()
            .to_string()
            .contains("cell n = 256"));
        let mut c = config();
        c.pairs_per_graph = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn aggregate_rejects_reordered_units() {
        let c = config();
        let gammas = calibrate_cells(&c).unwrap();
        let mut units: Vec<_> = c
            .work_units()
            .into_iter()
            .map(|u| run_unit(&c, u, gammas[u.cell]).unwrap())
            .collect();
        units.swap(0, 1);
        assert!(aggregate(&c, units).is_err());
    }
}
