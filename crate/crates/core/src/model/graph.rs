use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::params::GraphParams;
use super::ring::{ring_distance, NodeId};
use crate::error::{Error, Result};

/// Provenance of an undirected edge. Routing ignores it; estimators that
/// talk about long-range links read it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    ShortRange,
    LongRange,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::ShortRange => "short_range",
            EdgeKind::LongRange => "long_range",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "short_range" => Ok(EdgeKind::ShortRange),
            "long_range" => Ok(EdgeKind::LongRange),
            other => Err(Error::Validation(format!("unknown edge kind `{other}`"))),
        }
    }
}

/// Immutable embedded graph.
///
/// Adjacency is stored in compressed rows with each row sorted ascending,
/// alongside the canonical edge list (`u < v`, lexicographic). Safe to share
/// across threads; all routing state lives outside the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlayGraph {
    params: GraphParams,
    gamma: f64,
    labels: Vec<u32>,
    offsets: Vec<u32>,
    neighbors: Vec<NodeId>,
    neighbor_kinds: Vec<EdgeKind>,
    edges: Vec<(NodeId, NodeId)>,
    edge_kinds: Vec<EdgeKind>,
}

impl OverlayGraph {
    /// Builds a graph from undirected edges given in any order or
    /// orientation. Rejects invalid parameters, a label vector of the wrong
    /// length or with a label outside `[1, μ]`, endpoints outside the ring,
    /// self-loops and repeated edges.
    ///
    /// The short-range guarantee is not enforced here so hand-built
    /// instances load; see [`short_range_violation`](Self::short_range_violation).
    pub fn from_edges(
        params: GraphParams,
        gamma: f64,
        labels: Vec<u32>,
        edges: impl IntoIterator<Item = (NodeId, NodeId, EdgeKind)>,
    ) -> Result<Self> {
        params.validate()?;
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::Validation(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        let n = params.n;
        if labels.len() != n as usize {
            return Err(Error::Validation(format!(
                "expected {n} labels, found {}",
                labels.len()
            )));
        }
        if let Some((v, l)) = labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l < 1 || l > params.mu)
        {
            return Err(Error::Validation(format!(
                "label out of range: node {v} has label {l}, expected 1..={}",
                params.mu
            )));
        }

        let mut list: Vec<(NodeId, NodeId, EdgeKind)> = Vec::new();
        for (u, v, kind) in edges {
            if u.0 >= n || v.0 >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at node {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a, b, kind));
        }
        list.sort_unstable();
        if let Some(w) = list
            .windows(2)
            .find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
        {
            return Err(Error::Validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::assemble(params, gamma, labels, list))
    }

    /// `list` must be canonical, sorted and duplicate-free.
    pub(crate) fn assemble(
        params: GraphParams,
        gamma: f64,
        labels: Vec<u32>,
        list: Vec<(NodeId, NodeId, EdgeKind)>,
    ) -> Self {
        let n = params.n as usize;
        let mut degree = alloc::vec![0u32; n];
        for &(u, v, _) in &list {
            degree[u.index()] += 1;
            degree[v.index()] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u32);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap() as usize;
        let mut rows: Vec<(NodeId, EdgeKind)> =
            alloc::vec![(NodeId(0), EdgeKind::ShortRange); total];
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        for &(u, v, kind) in &list {
            rows[fill[u.index()] as usize] = (v, kind);
            fill[u.index()] += 1;
            rows[fill[v.index()] as usize] = (u, kind);
            fill[v.index()] += 1;
        }
        for v in 0..n {
            rows[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable_by_key(|&(w, _)| w);
        }
        let (neighbors, neighbor_kinds) = rows.into_iter().unzip();
        let (edges, edge_kinds) = list.into_iter().map(|(u, v, k)| ((u, v), k)).unzip();
        OverlayGraph {
            params,
            gamma,
            labels,
            offsets,
            neighbors,
            neighbor_kinds,
            edges,
            edge_kinds,
        }
    }

    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, v: NodeId) -> u32 {
        self.labels[v.index()]
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v.index()] as usize..self.offsets[v.index() + 1] as usize]
    }

    /// Neighbors of `v` paired with the kind of the connecting edge.
    pub fn neighbors_with_kind(&self, v: NodeId) -> impl Iterator<Item = (NodeId, EdgeKind)> + '_ {
        let range = self.offsets[v.index()] as usize..self.offsets[v.index() + 1] as usize;
        self.neighbors[range.clone()]
            .iter()
            .copied()
            .zip(self.neighbor_kinds[range].iter().copied())
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        (self.offsets[v.index() + 1] - self.offsets[v.index()]) as usize
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.params.n).map(NodeId)
    }

    /// Canonical edges: `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Kinds parallel to [`edges`](Self::edges).
    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.edge_kinds
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn count_by_kind(&self, kind: EdgeKind) -> usize {
        self.edge_kinds.iter().filter(|&&k| k == kind).count()
    }

    #[inline]
    pub fn distance(&self, u: NodeId, v: NodeId) -> u32 {
        ring_distance(u, v, self.params.n)
    }

    /// First node lacking a neighbor at signed offset in `[1, C]` or in
    /// `[-C, -1]`, if any.
    pub fn short_range_violation(&self) -> Option<NodeId> {
        let n = self.params.n;
        let c = self.params.c;
        self.nodes().find(|&v| {
            let mut up = false;
            let mut down = false;
            for &w in self.neighbors(v) {
                let forward = (w.0 + n - v.0) % n;
                if (1..=c).contains(&forward) {
                    up = true;
                }
                if (1..=c).contains(&(n - forward)) {
                    down = true;
                }
            }
            !(up && down)
        })
    }

    /// Re-checks every structural invariant: symmetric, sorted,
    /// duplicate-free adjacency without self-loops, labels in range, and
    /// rows consistent with the edge list.
    pub fn validate(&self) -> Result<()> {
        let n = self.params.n;
        if let Some((v, l)) = self
            .labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l < 1 || l > self.params.mu)
        {
            return Err(Error::Validation(format!(
                "label out of range: node {v} has label {l}"
            )));
        }
        for v in self.nodes() {
            let row = self.neighbors(v);
            for pair in row.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::Validation(format!(
                        "neighbor list of {v} is not strictly ascending"
                    )));
                }
            }
            for &w in row {
                if w.0 >= n {
                    return Err(Error::Validation(format!(
                        "node {v} lists out-of-range neighbor {w}"
                    )));
                }
                if w == v {
                    return Err(Error::Validation(format!("self-loop at node {v}")));
                }
                if !self.has_edge(w, v) {
                    return Err(Error::Validation(format!(
                        "asymmetric adjacency: ({v}, {w}) without ({w}, {v})"
                    )));
                }
            }
        }
        if self.neighbors.len() != 2 * self.edges.len() {
            return Err(Error::Validation("adjacency and edge list disagree".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn params(n: u32) -> GraphParams {
        GraphParams::new(n, 1, 2.5, 0).with_mu(3)
    }

    #[test]
    fn builds_sorted_symmetric_rows() {
        let edges = [(3, 1), (0, 1), (2, 3), (0, 3)]
            .map(|(u, v)| (NodeId(u), NodeId(v), EdgeKind::ShortRange));
        let g = OverlayGraph::from_edges(params(8), 1.0, vec![1; 8], edges).unwrap();
        assert_eq!(g.neighbors(NodeId(1)), &[NodeId(0), NodeId(3)]);
        assert_eq!(g.edges()[0], (NodeId(0), NodeId(1)));
        assert!(g.validate().is_ok());
        assert_eq!(g.short_range_violation(), Some(NodeId(0)));
    }

    #[test]
    fn rejects_label_out_of_range() {
        let err =
            OverlayGraph::from_edges(params(8), 1.0, vec![1, 0, 1, 1, 1, 1, 1, 1], []).unwrap_err();
        assert!(err.to_string().contains("label out of range"), "{err}");
        let err =
            OverlayGraph::from_edges(params(8), 1.0, vec![1, 4, 1, 1, 1, 1, 1, 1], []).unwrap_err();
        assert!(err.to_string().contains("label out of range"), "{err}");
    }

    #[test]
    fn rejects_structural_defects() {
        let loop_edge = [(NodeId(2), NodeId(2), EdgeKind::LongRange)];
        assert!(OverlayGraph::from_edges(params(8), 1.0, vec![1; 8], loop_edge).is_err());
        let dup = [
            (NodeId(1), NodeId(2), EdgeKind::LongRange),
            (NodeId(2), NodeId(1), EdgeKind::ShortRange),
        ];
        let err = OverlayGraph::from_edges(params(8), 1.0, vec![1; 8], dup).unwrap_err();
        assert!(err.to_string().contains("duplicate edge"));
        let outside = [(NodeId(1), NodeId(9), EdgeKind::LongRange)];
        assert!(OverlayGraph::from_edges(params(8), 1.0, vec![1; 8], outside).is_err());
        assert!(OverlayGraph::from_edges(params(8), 1.0, vec![1; 7], []).is_err());
    }
}
