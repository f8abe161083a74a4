use alloc::format;

use super::labels::LabelDistribution;
use crate::error::{Error, Result};

pub const DEFAULT_GAMMA_TOL: f64 = 1e-10;

const BRACKET_LOW: f64 = 1e-6;
const MAX_DOUBLINGS: u32 = 64;
const MAX_BISECTIONS: u32 = 400;

/// Number of nodes at distance `d` from a fixed node: two for `d < n/2`,
/// one at the antipode of an even ring, zero otherwise.
#[inline]
pub fn node_multiplicity(n: u32, d: u32) -> u32 {
    let (n, d) = (n as u64, d as u64);
    if d == 0 || 2 * d > n {
        0
    } else if 2 * d == n {
        1
    } else {
        2
    }
}

/// Number of unordered pairs at distance `d`: `n` for `d < n/2`, `n/2` at
/// the antipode of an even ring.
#[inline]
pub fn pair_count(n: u32, d: u32) -> u64 {
    n as u64 * node_multiplicity(n, d) as u64 / 2
}

/// `1 - exp(-l_u l_v / (d γ))`.
pub fn long_range_probability(l_u: u32, l_v: u32, d: u32, gamma: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::param(
            "d",
            "distance must be positive (self-pairs are excluded)",
        ));
    }
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::param(
            "gamma",
            format!("must be positive, got {gamma}"),
        ));
    }
    Ok(-libm::expm1(
        -(l_u as f64 * l_v as f64) / (d as f64 * gamma),
    ))
}

/// Expected long-range degree of a label-1 node,
/// `F(γ) = Σ_d m_d Σ_l (1 - e^{-l/(dγ)}) P(S = l)`, with `m_d` from
/// [`node_multiplicity`]. Summed distance-major with Neumaier compensation.
pub fn calibration_sum(n: u32, labels: &LabelDistribution, gamma: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for d in 1..=n / 2 {
        let m = node_multiplicity(n, d) as f64;
        let scale = 1.0 / (d as f64 * gamma);
        for (i, p) in labels.probabilities().iter().enumerate() {
            let term = m * p * -libm::expm1(-((i + 1) as f64) * scale);
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
    }
    sum + comp
}

/// Normalization constant γ with `|F(γ) - 1| <= tol`.
pub fn calibrate_gamma(n: u32, alpha: f64, mu: u32, tol: f64) -> Result<f64> {
    let labels = LabelDistribution::new(alpha, mu)?;
    calibrate_gamma_for(n, &labels, tol)
}

/// Bracketed bisection on the strictly decreasing `F`. The bracket starts at
/// `[1e-6, 1e3 μ ln n]` and the upper end doubles until `F < 1`.
pub fn calibrate_gamma_for(n: u32, labels: &LabelDistribution, tol: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::param("n", "ring needs at least two nodes"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::param("tol", "must be positive"));
    }
    let f = |g: f64| calibration_sum(n, labels, g) - 1.0;

    let mut lo = BRACKET_LOW;
    let mut hi = 1e3 * labels.mu() as f64 * libm::log((n as f64).max(2.0));
    if f(lo) <= 0.0 {
        return Err(Error::Numerical(format!(
            "F({lo}) <= 1; no root above the bracket floor"
        )));
    }
    let mut doublings = 0;
    while f(hi) >= 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(Error::Numerical(format!(
                "bracket expansion failed after {MAX_DOUBLINGS} doublings"
            )));
        }
    }

    let mut best = (f64::INFINITY, lo);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let r = f(mid);
        if r.abs() < best.0 {
            best = (r.abs(), mid);
        }
        if r.abs() <= tol {
            return Ok(mid);
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid {
            break;
        }
    }
    if best.0 <= tol {
        Ok(best.1)
    } else {
        Err(Error::Numerical(format!(
            "bisection stalled at |F - 1| = {:e} > {tol:e}",
            best.0
        )))
    }
}
