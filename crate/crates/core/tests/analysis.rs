use nextbest_core::analysis::{
    analytic_link_length_tail, estimate_link_length_tail, run_experiment, ExperimentConfig, MuRule,
};
use nextbest_core::model::calibrate_gamma;
use nextbest_core::{ring_distance, AlgorithmKind, GeneratorKind, GraphParams};

// γ and the tail probability for (n = 10^4, α = 2.5, μ = 13), summed node
// by node around one node in 30-digit arithmetic.
const GAMMA_1E4: f64 = 28.076_853_887_429_58;
const TAIL_C1: f64 = 0.402_077_696_712_899_9;
const TAIL_C3: f64 = 0.404_209_992_192_414_9;

#[test]
fn analytic_tail_matches_the_oracle() {
    let gamma = calibrate_gamma(10_000, 2.5, 13, 1e-12).unwrap();
    assert!((gamma - GAMMA_1E4).abs() < 1e-8 * GAMMA_1E4, "{gamma}");
    for (c, expected) in [(1, TAIL_C1), (3, TAIL_C3)] {
        let params = GraphParams::new(10_000, c, 2.5, 0).with_mu(13);
        let tail = analytic_link_length_tail(&params, gamma).unwrap();
        assert!((tail - expected).abs() < 1e-9, "C = {c}: {tail}");
    }
}

#[test]
fn doubling_samples_shrinks_the_interval() {
    let params = GraphParams::new(4096, 1, 2.5, 8);
    let small = estimate_link_length_tail(&params, 20_000).unwrap();
    let large = estimate_link_length_tail(&params.with_seed(9), 40_000).unwrap();
    let ratio = small.half_width().unwrap() / large.half_width().unwrap();
    assert!((1.2..=1.7).contains(&ratio), "ratio {ratio}");
}

#[test]
fn single_greedy_query_on_unit_inaccuracy() {
    let config = ExperimentConfig {
        n_values: vec![512],
        c_values: vec![1],
        alpha_values: vec![2.5],
        mu_rule: MuRule::Log2OfN,
        algorithms: vec![AlgorithmKind::Greedy],
        graphs_per_cell: 1,
        pairs_per_graph: 1,
        base_seed: 4,
        generator: GeneratorKind::Poisson,
    };
    let result = run_experiment(&config).unwrap();
    let row = &result.rows[0];
    let (s, t) = result.units[0].tallies[0].routed[0];
    // the ring guarantees a closer neighbor, and each hop gains at least one
    assert_eq!(row.success_rate, 1.0);
    assert!(row.mean_hops.unwrap() <= ring_distance(s, t, 512) as f64);
    assert!(row.mean_hops.unwrap() >= 1.0);
}

#[test]
fn rows_split_hops_into_forward_and_backtrack() {
    let config = ExperimentConfig {
        n_values: vec![256, 1024],
        c_values: vec![2, 8],
        alpha_values: vec![2.3],
        mu_rule: MuRule::Explicit(8),
        algorithms: AlgorithmKind::ALL.to_vec(),
        graphs_per_cell: 2,
        pairs_per_graph: 60,
        base_seed: 10,
        generator: GeneratorKind::Poisson,
    };
    let result = run_experiment(&config).unwrap();
    assert_eq!(result.rows.len(), 4 * 4);
    for row in &result.rows {
        assert!((0.0..=1.0).contains(&row.success_rate));
        if let Some(m) = row.mean_hops {
            let split = row.mean_forward.unwrap() + row.mean_backtrack.unwrap();
            assert!((m - split).abs() < 1e-9, "{row:?}");
        }
    }
    // matched triples across algorithms in every cell
    for cell in 0..4 {
        let first = result.audit_triples(cell, 0);
        for k in 1..4 {
            assert_eq!(result.audit_triples(cell, k), first);
        }
    }
}
