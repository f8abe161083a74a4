use alloc::format;

use crate::error::{Error, Result};

/// Closed-form exponents of the routing-length bounds for one `α`.
///
/// NextBestOnce: `O(log^{α-1} n · log log n + C³ log n)` from above and
/// `Ω(log^{α-1} n + C)` from below. NextBestOnce-NoN:
/// `O(log^{δ(α)(α-1)} n · log log n + C³ log n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalBounds {
    pub alpha: f64,
    pub nbo_upper_exponent: f64,
    pub non_exponent: f64,
    /// `δ(α) = 1 - (α-2)(3-α)/α`.
    pub delta: f64,
    /// Asymptotic phase split exponent; equals `delta`.
    pub r_min_star: f64,
    /// Degree exponent of the intermediate hop, `α - 2`.
    pub k_min: f64,
    pub c_term_upper: &'static str,
    pub c_term_lower: &'static str,
}

pub fn theoretical_bounds(alpha: f64) -> Result<TheoreticalBounds> {
    if !(alpha > 2.0 && alpha < 3.0) {
        return Err(Error::param(
            "alpha",
            format!("must lie strictly inside (2, 3), got {alpha}"),
        ));
    }
    let delta = 1.0 - (alpha - 2.0) * (3.0 - alpha) / alpha;
    Ok(TheoreticalBounds {
        alpha,
        nbo_upper_exponent: alpha - 1.0,
        non_exponent: delta * (alpha - 1.0),
        delta,
        r_min_star: delta,
        k_min: alpha - 2.0,
        c_term_upper: "C^3 log n",
        c_term_lower: "C",
    })
}

/// Finite-`n` phase split `ln((α-1)^{-1/α}) / ln ln n + δ(α)` (natural
/// logarithms). Tends to [`TheoreticalBounds::r_min_star`] as `n` grows.
pub fn r_min(alpha: f64, n: u32) -> Result<f64> {
    let bounds = theoretical_bounds(alpha)?;
    if n < 16 {
        return Err(Error::param("n", "needs ln ln n > 1, i.e. n >= 16"));
    }
    let lln = libm::log(libm::log(n as f64));
    Ok(libm::log(libm::pow(alpha - 1.0, -1.0 / alpha)) / lln + bounds.delta)
}
