#![allow(clippy::needless_range_loop)]

use nextbest_core::analysis::greedy_path_exists;
use nextbest_core::model::{EdgeKind, GraphParams, NodeId, OverlayGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Enumerates every strictly distance-decreasing walk from `w`, with no
/// memoisation.
fn brute(adj: &[Vec<bool>], n: usize, w: usize, v: usize) -> bool {
    let dist = |a: usize| {
        let d = a.abs_diff(v);
        d.min(n - d)
    };
    if w == v {
        return true;
    }
    (0..n).any(|x| adj[w][x] && dist(x) < dist(w) && brute(adj, n, x, v))
}

#[test]
fn greedy_reachability_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    for _ in 0..1000 {
        let n = rng.random_range(5..=12usize);
        let density = rng.random_range(0.1..0.6);
        let mut adj = vec![vec![false; n]; n];
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(density) {
                    adj[u][v] = true;
                    adj[v][u] = true;
                    edges.push((NodeId(u as u32), NodeId(v as u32), EdgeKind::LongRange));
                }
            }
        }
        let params = GraphParams::new(n as u32, 1, 2.5, 0).with_mu(1);
        let graph = OverlayGraph::from_edges(params, 1.0, vec![1; n], edges).unwrap();
        for w in 0..n {
            for v in 0..n {
                let got = greedy_path_exists(&graph, NodeId(w as u32), NodeId(v as u32));
                assert_eq!(got, brute(&adj, n, w, v), "n={n} w={w} v={v}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50_000);
}
