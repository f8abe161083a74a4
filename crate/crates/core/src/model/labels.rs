use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};

/// Truncated scale-free law `P(S = k) ∝ k^{-α}` on `k = 1..=μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelDistribution {
    alpha: f64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

impl LabelDistribution {
    /// Accepts any `α > 1` so the law can be exercised outside the model
    /// range; [`GraphParams`](super::GraphParams) enforces `2 < α < 3`.
    pub fn new(alpha: f64, mu: u32) -> Result<Self> {
        if mu < 1 {
            return Err(Error::param("mu", "must be at least 1"));
        }
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::param(
                "alpha",
                format!("must be finite and > 1, got {alpha}"),
            ));
        }
        let weights: Vec<f64> = (1..=mu).map(|k| libm::pow(k as f64, -alpha)).collect();
        let total: f64 = weights.iter().sum();
        let pmf: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut cdf = Vec::with_capacity(pmf.len());
        let mut acc = 0.0;
        for p in &pmf {
            acc += p;
            cdf.push(acc);
        }
        *cdf.last_mut().expect("mu >= 1") = 1.0;
        Ok(LabelDistribution { alpha, pmf, cdf })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> u32 {
        self.pmf.len() as u32
    }

    /// `P(S = k)`; zero outside `1..=μ`.
    pub fn pmf(&self, k: u32) -> f64 {
        if k == 0 {
            return 0.0;
        }
        self.pmf.get(k as usize - 1).copied().unwrap_or(0.0)
    }

    /// Probabilities for `k = 1..=μ`.
    pub fn probabilities(&self) -> &[f64] {
        &self.pmf
    }

    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(i, p)| (i + 1) as f64 * p)
            .sum()
    }

    /// Inverse-CDF draw; consumes exactly one `f64` from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u) as u32 + 1
    }
}

/// One label draw from `S_α` truncated at `mu`.
pub fn sample_label<R: Rng + ?Sized>(rng: &mut R, alpha: f64, mu: u32) -> Result<u32> {
    Ok(LabelDistribution::new(alpha, mu)?.sample(rng))
}
