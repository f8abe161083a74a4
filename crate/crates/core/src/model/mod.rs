//! The ring model `D(n, 1, C, S_α)`: parameters, metric, label law,
//! normalization, edge generators and the resulting immutable graph.

mod calibrate;
mod generate;
mod graph;
mod labels;
mod params;
mod ring;

pub use self::calibrate::{
    calibrate_gamma, calibrate_gamma_for, calibration_sum, long_range_probability,
    node_multiplicity, pair_count, DEFAULT_GAMMA_TOL,
};
pub use self::generate::{
    build_graph, build_graph_with, generate_long_range_exact, generate_long_range_poisson,
    generate_short_range, sample_short_range_choices, BuildOptions, ShortRangeChoice,
    DEFAULT_EXACT_CAP,
};
pub use self::graph::{EdgeKind, OverlayGraph};
pub use self::labels::{sample_label, LabelDistribution};
pub use self::params::{GeneratorKind, GraphParams};
pub use self::ring::{ring_distance, BallSpec, NodeId};
