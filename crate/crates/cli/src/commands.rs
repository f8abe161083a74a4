//! Subcommand definitions and their implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nextbest_core::analysis::connectivity_check;
use nextbest_core::model::{build_graph_with, BuildOptions, DEFAULT_EXACT_CAP};
use nextbest_core::{
    AlgorithmKind, EdgeKind, GeneratorKind, GraphParams, NodeId, OverlayGraph, RouteQuery,
};
use serde::Serialize;

use crate::config::{ConfigDocument, ConfigOverrides};
use crate::error::{CliError, CliResult, EXIT_BAND, EXIT_OK};
use crate::graph_doc;
use crate::parallel::run_experiment_parallel;
use crate::results::{to_csv, RunRecord};
use crate::trace_doc::{TraceDocument, DEFAULT_MAX_PATH};
use crate::verify::{self, Suite, VerifyRequest};

#[derive(Debug, Parser)]
#[command(
    name = "nextbest",
    version,
    about = "Routing experiments on ring overlays with scale-free long-range links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one graph and write its document.
    Generate(GenerateArgs),
    /// Route one query on a stored graph.
    Route(RouteArgs),
    /// Run a parameter sweep and write CSV results.
    Experiment(ExperimentArgs),
    /// Run an estimator suite against its acceptance band.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1024)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub c: u32,
    #[arg(long, default_value_t = 2.5)]
    pub alpha: f64,
    /// Largest label; defaults to max(2, ceil(log2 n)).
    #[arg(long)]
    pub mu: Option<u32>,
    /// Generated and printed when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "poisson")]
    pub generator: String,
}

impl ModelArgs {
    fn params(&self, out: &mut impl Write) -> CliResult<GraphParams> {
        let seed = resolve_seed(self.seed, out);
        let generator: GeneratorKind = self.generator.parse()?;
        let mut p = GraphParams::new(self.n, self.c, self.alpha, seed).with_generator(generator);
        if let Some(mu) = self.mu {
            p = p.with_mu(mu);
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Node limit for the exact generator.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: u32,
    #[arg(long)]
    pub target: u32,
    /// greedy, ddfs, nbo or non.
    #[arg(long, default_value = "nbo")]
    pub algo: String,
    #[arg(long)]
    pub hop_cap: Option<u64>,
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
    /// Longest path written to the trace document.
    #[arg(long, default_value_t = DEFAULT_MAX_PATH)]
    pub max_path: usize,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub parallelism: usize,
    /// Replaces the config's base_seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub graphs: Option<u32>,
    #[arg(long)]
    pub pairs: Option<u32>,
    /// Writes the routed (graph seed, source, target) triples per algorithm.
    #[arg(long)]
    pub audit_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Replaces the suite's primary threshold.
    #[arg(long)]
    pub band: Option<f64>,
    /// greedy-path: pair distance cut, default round(C^2 ln n).
    #[arg(long)]
    pub threshold: Option<u32>,
    /// halving: keep X values above exp((ln n)^r).
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn resolve_seed(seed: Option<u64>, out: &mut impl Write) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            let _ = writeln!(out, "no seed given; using seed {s}");
            s
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn echo_params(out: &mut impl Write, p: &GraphParams) {
    let _ = writeln!(
        out,
        "params: n={} c={} alpha={} mu={} seed={} generator={}",
        p.n,
        p.c,
        p.alpha,
        p.mu,
        p.seed,
        p.generator.as_str()
    );
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> CliResult<i32> {
    match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Route(a) => route(a, out),
        Command::Experiment(a) => experiment(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

pub fn generate(args: GenerateArgs, out: &mut impl Write) -> CliResult<i32> {
    let params = args.model.params(out)?;
    echo_params(out, &params);
    let options = BuildOptions {
        exact_cap: args.exact_cap,
        ..BuildOptions::default()
    };
    let graph = build_graph_with(&params, &options)?;
    write_file(&args.out, &graph_doc::to_json(&graph))?;
    let conn = connectivity_check(&graph);
    let _ = writeln!(out, "gamma: {}", graph.gamma());
    let _ = writeln!(
        out,
        "edges: {} total, {} short_range, {} long_range",
        graph.edge_count(),
        graph.count_by_kind(EdgeKind::ShortRange),
        graph.count_by_kind(EdgeKind::LongRange)
    );
    let _ = writeln!(
        out,
        "connectivity: {} ({} component{}, largest {})",
        if conn.connected {
            "connected"
        } else {
            "disconnected"
        },
        conn.component_sizes.len(),
        if conn.component_sizes.len() == 1 {
            ""
        } else {
            "s"
        },
        conn.component_sizes.first().copied().unwrap_or(0)
    );
    if params.outside_lower_bound_regime() {
        let _ = writeln!(
            out,
            "note: C >= n^(1/4)/4, outside the regime of the lower bound"
        );
    }
    let _ = writeln!(out, "wrote {}", args.out.display());
    Ok(EXIT_OK)
}

pub fn load_graph(path: &Path) -> CliResult<OverlayGraph> {
    graph_doc::from_json(&read_file(path)?)
}

pub fn route(args: RouteArgs, out: &mut impl Write) -> CliResult<i32> {
    let graph = load_graph(&args.graph)?;
    let n = graph.n();
    for (name, v) in [("source", args.source), ("target", args.target)] {
        if v >= n {
            return Err(CliError::Usage(format!("--{name} {v} is outside 0..{n}")));
        }
    }
    let algorithm: AlgorithmKind = args.algo.parse()?;
    let mut query = RouteQuery::new(NodeId(args.source), NodeId(args.target), algorithm);
    if let Some(cap) = args.hop_cap {
        query = query.with_hop_cap(cap);
    }
    let hop_cap = query.effective_hop_cap(&graph);
    echo_params(out, graph.params());
    let _ = writeln!(
        out,
        "query: source={} target={} algo={} hop_cap={hop_cap}",
        args.source,
        args.target,
        algorithm.as_str()
    );
    let trace = nextbest_core::route(&graph, &query)?;
    let _ = writeln!(out, "outcome: {}", trace.outcome.as_str());
    let _ = writeln!(
        out,
        "hops: {} ({} forward, {} backtrack)",
        trace.total_hops(),
        trace.forward_hops,
        trace.backtrack_hops
    );
    let _ = writeln!(out, "marked: {}", trace.marked_count);
    if let Some(path) = &args.trace_out {
        let doc = TraceDocument::new(&trace, graph.params().into(), hop_cap, args.max_path);
        write_file(path, &doc.to_json())?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AuditEntry {
    cell: usize,
    graph: u32,
    graph_seed: u64,
    algorithm: &'static str,
    pairs: Vec<[u32; 2]>,
}

pub fn experiment(args: ExperimentArgs, out: &mut impl Write) -> CliResult<i32> {
    let mut doc = ConfigDocument::parse(&read_file(&args.config)?)?;
    doc.apply(&ConfigOverrides {
        base_seed: args.seed,
        generator: args.generator.clone(),
        graphs_per_cell: args.graphs,
        pairs_per_graph: args.pairs,
    });
    if doc.base_seed.is_none() {
        doc.base_seed = Some(resolve_seed(None, out));
    }
    let config = doc.to_config()?;
    if args.parallelism == 0 {
        return Err(CliError::Usage(
            "--parallelism must be at least 1".to_string(),
        ));
    }
    let effective = ConfigDocument::from_config(&config);
    let _ = writeln!(
        out,
        "config: {}",
        serde_json::to_string(&effective).expect("config serializes")
    );
    let _ = writeln!(out, "parallelism: {}", args.parallelism);
    let result = run_experiment_parallel(&config, args.parallelism)?;
    write_file(&args.out, &to_csv(&result))?;
    let record_path = sidecar_path(&args.out);
    write_file(&record_path, &RunRecord::new(&config, &result).to_json())?;
    if let Some(path) = &args.audit_out {
        let mut entries = Vec::new();
        for u in &result.units {
            for (k, alg) in config.algorithms.iter().enumerate() {
                entries.push(AuditEntry {
                    cell: u.unit.cell,
                    graph: u.unit.graph,
                    graph_seed: u.graph_seed,
                    algorithm: alg.as_str(),
                    pairs: u.tallies[k]
                        .routed
                        .iter()
                        .map(|&(s, t)| [s.0, t.0])
                        .collect(),
                });
            }
        }
        write_file(
            path,
            &(serde_json::to_string(&entries).expect("audit serializes") + "\n"),
        )?;
    }
    for row in &result.rows {
        let _ = writeln!(
            out,
            "n={} c={} alpha={} {:<6} trials={} success={:.4} mean_hops={}",
            row.n,
            row.c,
            row.alpha,
            row.algorithm.as_str(),
            row.trials,
            row.success_rate,
            row.mean_hops
                .map_or("undefined".to_string(), |m| format!("{m:.3}"))
        );
    }
    let _ = writeln!(
        out,
        "wrote {} and {}",
        args.out.display(),
        record_path.display()
    );
    Ok(EXIT_OK)
}

/// Where the run record for a CSV at `csv` goes.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".run.json");
    PathBuf::from(s)
}

pub fn verify_cmd(args: VerifyArgs, out: &mut impl Write) -> CliResult<i32> {
    let suite: Suite = args.suite.parse()?;
    let params = args.model.params(out)?;
    let mut request = VerifyRequest::new(suite, params);
    if let Some(t) = args.trials {
        request.trials = t;
    }
    if let Some(b) = args.band {
        request.band = b;
    }
    request.threshold = args.threshold;
    request.r = args.r;
    echo_params(out, &params);
    let _ = writeln!(
        out,
        "suite: {suite} trials={} band={}",
        request.trials, request.band
    );
    let outcome = verify::run(&request)?;
    let r = &outcome.report;
    let fmt = |x: Option<f64>| x.map_or("undefined".to_string(), |v| format!("{v:.6}"));
    let _ = writeln!(out, "estimate: {} (samples {})", fmt(r.estimate), r.samples);
    if let Some((lo, hi)) = r.ci95 {
        let _ = writeln!(out, "ci95: [{lo:.6}, {hi:.6}]");
    }
    if r.reference.is_some() {
        let _ = writeln!(out, "reference: {}", fmt(r.reference));
    }
    for (k, v) in &r.parameters {
        let _ = writeln!(out, "  {k}: {v}");
    }
    if let Some(d) = &r.diagnostic {
        let _ = writeln!(out, "diagnostic: {d}");
    }
    let _ = writeln!(
        out,
        "band: {} -> {}",
        outcome.band.description,
        if outcome.band.passed { "PASS" } else { "FAIL" }
    );
    if let Some(path) = &args.out {
        let text =
            serde_json::to_string_pretty(&outcome.document()).expect("report serializes") + "\n";
        write_file(path, &text)?;
    }
    Ok(if outcome.band.passed {
        EXIT_OK
    } else {
        EXIT_BAND
    })
}
