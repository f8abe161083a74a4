use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Which long-range sampler [`build_graph`](super::build_graph) uses. Both
/// produce the same edge distribution; `Exact` visits every pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GeneratorKind {
    Exact,
    #[default]
    Poisson,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Exact => "exact",
            GeneratorKind::Poisson => "poisson",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(GeneratorKind::Exact),
            "poisson" => Ok(GeneratorKind::Poisson),
            other => Err(Error::param(
                "generator",
                format!("unknown generator `{other}` (expected exact|poisson)"),
            )),
        }
    }
}

/// Parameters of one instance of `D(n, 1, C, S_α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphParams {
    /// Ring length and node count.
    pub n: u32,
    /// Embedding inaccuracy: short-range links reach at most `c` positions.
    pub c: u32,
    /// Scale-free exponent of the label law.
    pub alpha: f64,
    /// Largest label.
    pub mu: u32,
    pub seed: u64,
    pub generator: GeneratorKind,
}

impl GraphParams {
    /// Parameters with `mu` at its default and the poisson generator.
    pub fn new(n: u32, c: u32, alpha: f64, seed: u64) -> Self {
        GraphParams {
            n,
            c,
            alpha,
            mu: Self::default_mu(n),
            seed,
            generator: GeneratorKind::default(),
        }
    }

    pub fn with_mu(mut self, mu: u32) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_generator(mut self, generator: GeneratorKind) -> Self {
        self.generator = generator;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `max(2, ceil(log2 n))`.
    pub fn default_mu(n: u32) -> u32 {
        let bits = if n <= 1 {
            0
        } else {
            32 - (n - 1).leading_zeros()
        };
        bits.max(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::param(
                "n",
                format!("must be at least 4, got {}", self.n),
            ));
        }
        if self.c < 1 || 4 * self.c as u64 >= self.n as u64 {
            return Err(Error::param(
                "c",
                format!(
                    "must satisfy 1 <= C < n/4, got C = {} with n = {}",
                    self.c, self.n
                ),
            ));
        }
        if !(self.alpha > 2.0 && self.alpha < 3.0) {
            return Err(Error::param(
                "alpha",
                format!("must lie strictly inside (2, 3), got {}", self.alpha),
            ));
        }
        if self.mu < 1 {
            return Err(Error::param("mu", "must be at least 1"));
        }
        Ok(())
    }

    /// True when `C >= n^{1/4} / 4`, outside the regime of the linear-in-C
    /// lower bound. Such parameters are valid but callers should warn.
    pub fn outside_lower_bound_regime(&self) -> bool {
        self.c as f64 >= libm::pow(self.n as f64, 0.25) / 4.0
    }
}
