use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{NodeId, OverlayGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    /// Component sizes, largest first.
    pub component_sizes: Vec<u32>,
}

/// Component index per node, numbered in order of the smallest member.
pub fn component_ids(graph: &OverlayGraph) -> Vec<u32> {
    let n = graph.n() as usize;
    let mut ids = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let mut next = 0u32;
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        ids[start] = next;
        queue.push_back(NodeId(start as u32));
        while let Some(v) = queue.pop_front() {
            for &w in graph.neighbors(v) {
                if ids[w.index()] == u32::MAX {
                    ids[w.index()] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    ids
}

/// Breadth-first component census.
pub fn connectivity_check(graph: &OverlayGraph) -> Connectivity {
    let ids = component_ids(graph);
    let count = ids.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut sizes = vec![0u32; count];
    for id in ids {
        sizes[id as usize] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Connectivity {
        connected: sizes.len() <= 1,
        component_sizes: sizes,
    }
}
