//! Gaussian laws, including the sd = 0 point mass.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal CDF, `Φ(x) = erfc(-x/√2) / 2`.
///
/// `erfc` keeps full relative precision in the lower tail, so the result is
/// accurate well below the 1e-12 absolute error the probability formulas need.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// `N(mu, sd²)`. `sd == 0` is a point mass at `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalDist {
    pub mu: f64,
    pub sd: f64,
}

impl NormalDist {
    pub fn new(mu: f64, sd: f64) -> Result<Self> {
        if !mu.is_finite() || !sd.is_finite() || sd < 0.0 {
            return Err(Error::InvalidNoise(format!(
                "normal law needs finite mean and sd >= 0, got N({mu}, {sd})"
            )));
        }
        Ok(NormalDist { mu, sd })
    }

    pub fn is_point_mass(&self) -> bool {
        self.sd == 0.0
    }

    /// `P[X <= x]`; for a point mass this is the step `x >= mu`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.sd == 0.0 {
            if x >= self.mu {
                1.0
            } else {
                0.0
            }
        } else if x == f64::INFINITY {
            1.0
        } else if x == f64::NEG_INFINITY {
            0.0
        } else {
            std_normal_cdf((x - self.mu) / self.sd)
        }
    }

    /// `P[X < 0]`. For a point mass at 0 this is 0; callers that care about
    /// that case reject it before asking.
    pub fn prob_negative(&self) -> f64 {
        if self.sd == 0.0 {
            if self.mu < 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            std_normal_cdf(-self.mu / self.sd)
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        debug_assert!(self.sd > 0.0);
        std_normal_pdf((x - self.mu) / self.sd) / self.sd
    }
}
