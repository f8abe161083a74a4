use nextbest_core::analysis::{
    aggregate, calibrate_cells, run_unit, ExperimentConfig, ExperimentResult,
};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

/// Runs every work unit on a pool of `threads` workers. Outcomes are
/// collected in work-unit order, so the result equals the serial run.
pub fn run_experiment_parallel(
    config: &ExperimentConfig,
    threads: usize,
) -> CliResult<ExperimentResult> {
    config.validate()?;
    let gammas = calibrate_cells(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} workers: {e}")))?;
    let units = pool.install(|| {
        config
            .work_units()
            .into_par_iter()
            .map(|unit| run_unit(config, unit, gammas[unit.cell]))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(aggregate(config, units)?)
}
