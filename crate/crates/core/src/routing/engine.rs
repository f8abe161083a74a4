use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::trace::{Mark, Move, Outcome, RouteTrace};
use super::{AlgorithmKind, RouteQuery};
use crate::error::{Error, Result};
use crate::model::{NodeId, OverlayGraph};

/// Identifiers a node advertises to its neighbors under `algorithm`.
pub fn ids_of(u: NodeId, graph: &OverlayGraph, algorithm: AlgorithmKind) -> Result<Vec<NodeId>> {
    if u.0 >= graph.n() {
        return Err(Error::param(
            "node",
            format!("{u} outside 0..{}", graph.n()),
        ));
    }
    if !algorithm.uses_neighbor_ids() {
        return Ok(vec![u]);
    }
    let neighbors = graph.neighbors(u);
    if neighbors.is_empty() {
        return Err(Error::Precondition(format!("node {u} has no neighbors")));
    }
    let mut ids = Vec::with_capacity(1 + neighbors.len());
    ids.push(u);
    ids.extend_from_slice(neighbors);
    Ok(ids)
}

/// Routes one query with fresh state.
pub fn route(graph: &OverlayGraph, query: &RouteQuery) -> Result<RouteTrace> {
    Router::new(graph).route(query)
}

/// Query-local routing state over a shared graph.
///
/// Holds the marked set and the per-node predecessor stacks so that many
/// queries on the same graph reuse one allocation; both are cleared after
/// every query.
pub struct Router<'g> {
    graph: &'g OverlayGraph,
    marked: Vec<bool>,
    stacks: Vec<Vec<NodeId>>,
    touched: Vec<NodeId>,
}

struct Walk {
    path: Vec<NodeId>,
    moves: Vec<Move>,
    marks: Vec<Mark>,
    x_sequence: Vec<u32>,
    forward: u64,
    backtrack: u64,
}

impl<'g> Router<'g> {
    pub fn new(graph: &'g OverlayGraph) -> Self {
        let n = graph.n() as usize;
        Router {
            graph,
            marked: vec![false; n],
            stacks: vec![Vec::new(); n],
            touched: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g OverlayGraph {
        self.graph
    }

    pub fn route(&mut self, query: &RouteQuery) -> Result<RouteTrace> {
        let n = self.graph.n();
        if query.source.0 >= n || query.target.0 >= n {
            return Err(Error::param(
                "query",
                format!(
                    "source {} / target {} outside 0..{n}",
                    query.source, query.target
                ),
            ));
        }
        let cap = query.effective_hop_cap(self.graph);
        let trace = match query.algorithm {
            AlgorithmKind::Greedy => self.greedy(query, cap),
            _ => self.next_best_once(query, cap),
        };
        self.reset();
        Ok(trace)
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.marked[v.index()] = false;
            self.stacks[v.index()].clear();
        }
    }

    fn closest_neighbor_distance(&self, v: NodeId, target: NodeId) -> u32 {
        self.graph
            .neighbors(v)
            .iter()
            .map(|&w| self.graph.distance(w, target))
            .min()
            .unwrap_or(u32::MAX)
    }

    fn start(&self, query: &RouteQuery) -> Walk {
        Walk {
            path: vec![query.source],
            moves: Vec::new(),
            marks: Vec::new(),
            x_sequence: vec![self.closest_neighbor_distance(query.source, query.target)],
            forward: 0,
            backtrack: 0,
        }
    }

    fn step(&self, walk: &mut Walk, next: NodeId, kind: Move, target: NodeId) {
        walk.path.push(next);
        walk.moves.push(kind);
        walk.x_sequence
            .push(self.closest_neighbor_distance(next, target));
        match kind {
            Move::Forward => walk.forward += 1,
            Move::Backtrack => walk.backtrack += 1,
        }
    }

    fn finish(&self, query: &RouteQuery, walk: Walk, outcome: Outcome) -> RouteTrace {
        RouteTrace {
            source: query.source,
            target: query.target,
            algorithm: query.algorithm,
            marked_count: walk.marks.len() as u64,
            path: walk.path,
            moves: walk.moves,
            forward_hops: walk.forward,
            backtrack_hops: walk.backtrack,
            marks: walk.marks,
            outcome,
            x_sequence: walk.x_sequence,
        }
    }

    fn greedy(&mut self, query: &RouteQuery, cap: u64) -> RouteTrace {
        let g = self.graph;
        let t = query.target;
        let mut walk = self.start(query);
        let mut current = query.source;
        let outcome = loop {
            if current == t {
                break Outcome::Success;
            }
            if walk.forward >= cap {
                break Outcome::Aborted;
            }
            let here = g.distance(current, t);
            let best = g
                .neighbors(current)
                .iter()
                .copied()
                .min_by_key(|&w| (g.distance(w, t), w));
            match best {
                Some(w) if g.distance(w, t) < here => {
                    self.step(&mut walk, w, Move::Forward, t);
                    current = w;
                }
                _ => break Outcome::Failure,
            }
        };
        self.finish(query, walk, outcome)
    }

    fn mark(&mut self, v: NodeId, walk: &mut Walk) {
        if !self.marked[v.index()] {
            self.marked[v.index()] = true;
            self.touched.push(v);
            walk.marks.push(Mark {
                node: v,
                step: walk.path.len() - 1,
            });
        }
    }

    /// Ranking key of candidate `u`: closest advertised identifier, then the
    /// candidate's own distance, then its position.
    fn rank(&self, u: NodeId, t: NodeId, algorithm: AlgorithmKind) -> (u32, u32, NodeId) {
        let g = self.graph;
        let own = g.distance(u, t);
        let best = if algorithm.uses_neighbor_ids() {
            g.neighbors(u)
                .iter()
                .map(|&w| g.distance(w, t))
                .fold(own, u32::min)
        } else {
            own
        };
        (best, own, u)
    }

    fn next_best_once(&mut self, query: &RouteQuery, cap: u64) -> RouteTrace {
        let g = self.graph;
        let t = query.target;
        let algorithm = query.algorithm;
        let mark_on_arrival = algorithm == AlgorithmKind::DistanceDirectedDfs;

        let mut walk = self.start(query);
        let mut current = query.source;
        let mut predecessor: Option<NodeId> = None;
        let mut backtracking = false;

        let outcome = loop {
            if current == t {
                break Outcome::Success;
            }
            if walk.forward + walk.backtrack >= cap {
                break Outcome::Aborted;
            }
            if !backtracking {
                if mark_on_arrival {
                    self.mark(current, &mut walk);
                }
                if let Some(p) = predecessor {
                    self.stacks[current.index()].push(p);
                    self.touched.push(current);
                }
            }

            let next = g
                .neighbors(current)
                .iter()
                .copied()
                .filter(|w| !self.marked[w.index()])
                .min_by_key(|&w| self.rank(w, t, algorithm));

            let (next, kind) = match next {
                Some(w) => {
                    backtracking = false;
                    // marking compares the representative identifier only
                    if g.distance(w, t) >= g.distance(current, t) {
                        self.mark(current, &mut walk);
                    }
                    (w, Move::Forward)
                }
                None => {
                    self.mark(current, &mut walk);
                    match self.stacks[current.index()].pop() {
                        Some(p) => {
                            backtracking = true;
                            (p, Move::Backtrack)
                        }
                        None => break Outcome::Failure,
                    }
                }
            };
            self.step(&mut walk, next, kind, t);
            predecessor = Some(current);
            current = next;
        };
        self.finish(query, walk, outcome)
    }
}
