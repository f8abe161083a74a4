use alloc::vec::Vec;

use super::AlgorithmKind;
use crate::model::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Success,
    Failure,
    /// The hop cap was reached. Never expected; see `default_hop_cap`.
    Aborted,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
            Outcome::Aborted => "aborted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Forward,
    Backtrack,
}

/// `node` entered the marked set while `path[step]` held the message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    pub node: NodeId,
    pub step: usize,
}

/// Full record of one query.
///
/// `path` lists every message holder in order, so `moves[i]` is the
/// transfer from `path[i]` to `path[i + 1]`. `x_sequence[i]` is the distance
/// to the target of the closest neighbor of `path[i]` (`u32::MAX` for a node
/// without neighbors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteTrace {
    pub source: NodeId,
    pub target: NodeId,
    pub algorithm: AlgorithmKind,
    pub path: Vec<NodeId>,
    pub moves: Vec<Move>,
    pub forward_hops: u64,
    pub backtrack_hops: u64,
    pub marked_count: u64,
    pub marks: Vec<Mark>,
    pub outcome: Outcome,
    pub x_sequence: Vec<u32>,
}

impl RouteTrace {
    pub fn total_hops(&self) -> u64 {
        self.forward_hops + self.backtrack_hops
    }

    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::Success
    }

    pub fn last(&self) -> NodeId {
        *self.path.last().expect("path starts at the source")
    }
}
