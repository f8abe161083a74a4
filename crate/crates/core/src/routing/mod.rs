//! NextBestOnce* with pluggable identifier sets, plus the greedy and
//! distance-directed DFS baselines.

mod engine;
mod halving;
mod trace;

pub use self::engine::{ids_of, route, Router};
pub use self::halving::{
    halving_statistics, x_monotonicity_violations, HalvingBin, HalvingOptions, HalvingProfile,
};
pub use self::trace::{Mark, Move, Outcome, RouteTrace};

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{NodeId, OverlayGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    /// Forward only to a strictly closer neighbor; fail at a local minimum.
    Greedy,
    /// Marks each node on first contact, backtracks through predecessors.
    DistanceDirectedDfs,
    /// Marks a node only once it forwards away from the target or runs out
    /// of unmarked neighbors. Ranks candidates by their own identifier.
    NextBestOnce,
    /// As [`NextBestOnce`](Self::NextBestOnce), ranking candidates by the
    /// closest identifier among themselves and their neighbors.
    NextBestOnceNoN,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::Greedy,
        AlgorithmKind::DistanceDirectedDfs,
        AlgorithmKind::NextBestOnce,
        AlgorithmKind::NextBestOnceNoN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::Greedy => "greedy",
            AlgorithmKind::DistanceDirectedDfs => "ddfs",
            AlgorithmKind::NextBestOnce => "nbo",
            AlgorithmKind::NextBestOnceNoN => "non",
        }
    }

    /// Whether candidates expose their neighbors' identifiers.
    pub fn uses_neighbor_ids(self) -> bool {
        self == AlgorithmKind::NextBestOnceNoN
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(AlgorithmKind::Greedy),
            "ddfs" | "distance-directed-dfs" => Ok(AlgorithmKind::DistanceDirectedDfs),
            "nbo" | "nextbestonce" => Ok(AlgorithmKind::NextBestOnce),
            "non" | "nbo-non" | "nextbestonce-non" => Ok(AlgorithmKind::NextBestOnceNoN),
            other => Err(Error::param(
                "algorithm",
                format!("unknown algorithm `{other}` (expected greedy|ddfs|nbo|non)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteQuery {
    pub source: NodeId,
    pub target: NodeId,
    pub algorithm: AlgorithmKind,
    /// Abort threshold on total transfers. `None` means `4 (1 + C) n`.
    pub hop_cap: Option<u64>,
}

impl RouteQuery {
    pub fn new(source: NodeId, target: NodeId, algorithm: AlgorithmKind) -> Self {
        RouteQuery {
            source,
            target,
            algorithm,
            hop_cap: None,
        }
    }

    pub fn with_hop_cap(mut self, cap: u64) -> Self {
        self.hop_cap = Some(cap);
        self
    }

    pub fn effective_hop_cap(&self, graph: &OverlayGraph) -> u64 {
        self.hop_cap.unwrap_or_else(|| default_hop_cap(graph))
    }
}

/// Proven transfer bound `2 (1 + C) n`.
pub fn hop_bound(graph: &OverlayGraph) -> u64 {
    2 * (1 + graph.params().c as u64) * graph.n() as u64
}

/// Twice [`hop_bound`]; crossing it signals a broken invariant.
pub fn default_hop_cap(graph: &OverlayGraph) -> u64 {
    2 * hop_bound(graph)
}
