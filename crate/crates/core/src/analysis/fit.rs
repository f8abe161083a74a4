use alloc::format;
use alloc::vec::Vec;

use super::experiment::ExperimentResult;
use crate::error::{Error, Result};
use crate::routing::AlgorithmKind;

/// Ordinary least squares line `y = intercept + slope x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub slope_stderr: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Regresses `ln(mean_hops)` on `ln(ln n)` for `(n, mean_hops)` points.
pub fn fit_loglog(points: &[(u32, f64)]) -> Result<LineFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, m)| *n >= 3 && *m > 0.0 && m.is_finite())
        .map(|&(n, m)| (libm::log(libm::log(n as f64)), libm::log(m)))
        .collect();
    let k = usable.len();
    if k < 3 {
        return Err(Error::param(
            "points",
            format!("need at least 3 usable points, got {k}"),
        ));
    }
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / k as f64;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / k as f64;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::param(
            "points",
            "need at least two distinct n values",
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = usable
        .iter()
        .map(|p| {
            let r = p.1 - intercept - slope * p.0;
            r * r
        })
        .sum();
    let slope_stderr = libm::sqrt(ssr / (k as f64 - 2.0) / sxx);
    Ok(LineFit {
        slope,
        slope_stderr,
        intercept,
        points: k,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub algorithm: AlgorithmKind,
    pub fit: LineFit,
}

/// Polylog scaling fit per algorithm at fixed `(C, α)`. The slope is a
/// trend diagnostic; at desk-scale `n` it does not recover the exponent.
pub fn fit_scaling(results: &ExperimentResult, c: u32, alpha: f64) -> Result<Vec<ScalingFit>> {
    let mut algorithms: Vec<AlgorithmKind> = results.rows.iter().map(|r| r.algorithm).collect();
    algorithms.sort_unstable();
    algorithms.dedup();
    algorithms
        .into_iter()
        .map(|algorithm| {
            let points: Vec<(u32, f64)> = results
                .rows
                .iter()
                .filter(|r| r.algorithm == algorithm && r.c == c && r.alpha == alpha)
                .filter_map(|r| r.mean_hops.map(|m| (r.n, m)))
                .collect();
            Ok(ScalingFit {
                algorithm,
                fit: fit_loglog(&points)?,
            })
        })
        .collect()
}
