//! Monte Carlo harness, lemma-level estimators and closed-form bounds.

mod bounds;
mod ci;
mod connectivity;
mod estimators;
mod experiment;
mod fit;
mod reach;

pub use self::bounds::{r_min, theoretical_bounds, TheoreticalBounds};
pub use self::ci::{mean_interval, wilson_interval, HopStats, MeanEstimate, Z95};
pub use self::connectivity::{component_ids, connectivity_check, Connectivity};
pub use self::estimators::{
    analytic_link_length_tail, estimate_inward_links, estimate_link_length_tail, round_half_up,
    sample_inward_links, EstimatorReport, InwardLinkSample,
};
pub use self::experiment::{
    aggregate, calibrate_cells, run_experiment, run_unit, AlgorithmTally, Cell, ExperimentConfig,
    ExperimentResult, MuRule, ResultRow, UnitOutcome, WorkUnit,
};
pub use self::fit::{fit_loglog, fit_scaling, LineFit, ScalingFit};
pub use self::reach::{estimate_greedy_path_probability, greedy_path_exists, greedy_threshold};
