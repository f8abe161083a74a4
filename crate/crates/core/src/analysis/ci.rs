/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Student t 0.975 quantiles for 1..=29 degrees of freedom.
const T975: [f64; 29] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
    2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
    2.052, 2.048, 2.045,
];

/// Wilson score interval at 95% for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    /// 95% half-width; NaN with fewer than two samples.
    pub half_width: f64,
    pub samples: u64,
}

impl MeanEstimate {
    pub fn lower(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

/// Normal interval from at least 30 samples, Student t below that.
pub fn mean_interval(mean: f64, variance: f64, samples: u64) -> MeanEstimate {
    let half_width = if samples < 2 {
        f64::NAN
    } else {
        let q = if samples >= 30 {
            Z95
        } else {
            T975[samples as usize - 2]
        };
        q * libm::sqrt(variance / samples as f64)
    };
    MeanEstimate {
        mean,
        half_width,
        samples,
    }
}

/// Exact integer moments of a hop-count sample; merging is associative so
/// the summary does not depend on accumulation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HopStats {
    pub count: u64,
    pub sum: u128,
    pub sum_sq: u128,
}

impl HopStats {
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.sum += x as u128;
        self.sum_sq += x as u128 * x as u128;
    }

    pub fn merge(&mut self, other: &HopStats) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum as f64 / self.count as f64)
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> Option<f64> {
        if self.count < 2 {
            return None;
        }
        let n = self.count as u128;
        let num = n * self.sum_sq - self.sum * self.sum;
        Some(num as f64 / (n * (n - 1)) as f64)
    }

    pub fn estimate(&self) -> Option<MeanEstimate> {
        let mean = self.mean()?;
        Some(mean_interval(
            mean,
            self.variance().unwrap_or(f64::NAN),
            self.count,
        ))
    }
}
