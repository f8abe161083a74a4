use alloc::vec::Vec;

use super::trace::{Move, RouteTrace};
use crate::analysis::wilson_interval;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalvingOptions {
    /// Keep only `d > exp((ln n)^r)` when set.
    pub r: Option<f64>,
    /// Bins with fewer observations report no frequency.
    pub min_samples: u64,
}

impl Default for HalvingOptions {
    fn default() -> Self {
        HalvingOptions {
            r: None,
            min_samples: 1,
        }
    }
}

/// Observations of `X_{i+2} <= d/2` for `d = X_i` in `[lower, upper)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingBin {
    pub lower: u32,
    pub upper: u64,
    pub trials: u64,
    pub halved: u64,
    pub frequency: Option<f64>,
    pub ci95: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalvingProfile {
    /// Power-of-two bins `[2^k, 2^{k+1})`, ascending, empty bins omitted.
    pub bins: Vec<HalvingBin>,
    /// Lower cut on `d` implied by `r`, if any.
    pub min_distance: Option<f64>,
}

impl HalvingProfile {
    pub fn bin_containing(&self, d: u32) -> Option<&HalvingBin> {
        self.bins
            .iter()
            .find(|b| b.lower <= d && (d as u64) < b.upper)
    }
}

/// Empirical frequency of the two-step halving event over the
/// `x_sequence` of every trace, binned by the starting value.
pub fn halving_statistics(
    traces: &[RouteTrace],
    n: u32,
    options: &HalvingOptions,
) -> HalvingProfile {
    let min_distance = options
        .r
        .map(|r| libm::exp(libm::pow(libm::log(n as f64), r)));
    let mut counts: Vec<(u64, u64)> = Vec::new();
    for trace in traces {
        let xs = &trace.x_sequence;
        for i in 0..xs.len().saturating_sub(2) {
            let (d, later) = (xs[i], xs[i + 2]);
            if d == 0 || d == u32::MAX || later == u32::MAX {
                continue;
            }
            if min_distance.is_some_and(|m| d as f64 <= m) {
                continue;
            }
            let bin = (31 - d.leading_zeros()) as usize;
            if counts.len() <= bin {
                counts.resize(bin + 1, (0, 0));
            }
            counts[bin].0 += 1;
            if 2 * later as u64 <= d as u64 {
                counts[bin].1 += 1;
            }
        }
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .filter(|(_, (trials, _))| *trials > 0)
        .map(|(k, (trials, halved))| {
            let defined = trials >= options.min_samples.max(1);
            HalvingBin {
                lower: 1 << k,
                upper: 1u64 << (k + 1),
                trials,
                halved,
                frequency: defined.then(|| halved as f64 / trials as f64),
                ci95: defined.then(|| wilson_interval(halved, trials)),
            }
        })
        .collect();
    HalvingProfile { bins, min_distance }
}

/// Forward steps on which the closest-neighbor distance grew while it was
/// still above `c`. Reported, not asserted: the decrease holds in
/// expectation only.
pub fn x_monotonicity_violations(trace: &RouteTrace, c: u32) -> usize {
    trace
        .moves
        .iter()
        .enumerate()
        .filter(|&(i, &m)| {
            m == Move::Forward
                && trace.x_sequence[i] > c
                && trace.x_sequence[i + 1] > trace.x_sequence[i]
        })
        .count()
}
