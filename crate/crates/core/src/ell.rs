//! The enlarged log-logistic family ELL(α, β, θ).
//!
//! `K(x) = 1 − 1 / ((x/β + α^θ)^{1/θ} + 1 − α)` on `x ≥ 0`. Its odds are
//! `(x/β + α^θ)^{1/θ} − α` and its quantile, written in odds units, is the
//! d-oMO distortion `β((α + t)^θ − α^θ)`. Hence the odds of a d-oMO law are
//! `K⁻¹ ∘ F`.

use alloc::vec::Vec;
use libm::pow;
use serde::{Deserialize, Serialize};

use crate::dist::{check_probability_open, ContinuousDistribution};
use crate::error::{Error, Result};
use crate::params::ParamTriple;
use crate::sampling::UniformStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnlargedLogLogistic {
    params: ParamTriple,
}

impl EnlargedLogLogistic {
    pub fn new(params: ParamTriple) -> Self {
        EnlargedLogLogistic { params }
    }

    pub fn from_parts(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        Ok(Self::new(ParamTriple::new(alpha, beta, theta)?))
    }

    /// `K_{0,1,1}`, the standard log-logistic law.
    pub fn standard() -> Self {
        Self::new(ParamTriple::new(0.0, 1.0, 1.0).expect("valid"))
    }

    pub fn params(&self) -> ParamTriple {
        self.params
    }

    /// `(x/β + α^θ)^{1/θ − 1}`, the part shared by density, hazard and odds rate.
    fn kernel(&self, x: f64) -> f64 {
        let p = self.params;
        let w = x / p.beta() + p.alpha_pow_theta();
        pow(w, 1.0 / p.theta() - 1.0)
    }

    fn scale_factor(&self) -> f64 {
        self.params.beta() * self.params.theta()
    }

    /// `K⁻¹ ∘ F(x)`, the odds a d-oMO law with the same parameters assigns
    /// to `x` over baseline `f`.
    pub fn compose_odds<D: ContinuousDistribution + ?Sized>(&self, f: &D, x: f64) -> f64 {
        let u = f.cdf(x);
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return f64::INFINITY;
        }
        self.params.distort(u / (1.0 - u))
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Empty("sample count must be >= 1"));
        }
        let mut stream = UniformStream::new(seed);
        (0..n).map(|_| self.quantile(stream.next_open())).collect()
    }
}

impl ContinuousDistribution for EnlargedLogLogistic {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let lam = self.params.undistort(x);
        if lam.is_infinite() {
            return 1.0;
        }
        (lam / (1.0 + lam)).clamp(0.0, 1.0)
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (1.0 / (1.0 + self.params.undistort(x))).clamp(0.0, 1.0)
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let k = self.kernel(x);
        if k.is_infinite() {
            return f64::INFINITY;
        }
        let d = self.params.undistort(x) + 1.0;
        k / (self.scale_factor() * d * d)
    }

    /// `β((1/(1−u) + α − 1)^θ − α^θ)`; `u = 0` maps to 0.
    fn quantile(&self, u: f64) -> Result<f64> {
        if u == 0.0 {
            return Ok(0.0);
        }
        check_probability_open(u)?;
        Ok(self.params.distort(u / (1.0 - u)))
    }

    fn isf(&self, q: f64) -> Result<f64> {
        if q == 1.0 {
            return Ok(0.0);
        }
        check_probability_open(q)?;
        Ok(self.params.distort((1.0 - q) / q))
    }

    fn hazard(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let k = self.kernel(x);
        if k.is_infinite() {
            return f64::INFINITY;
        }
        k / (self.scale_factor() * (self.params.undistort(x) + 1.0))
    }

    fn odds(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.params.undistort(x)
    }

    /// `(x/β + α^θ)^{1/θ − 1} / (βθ)`.
    fn odds_rate(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.kernel(x) / self.scale_factor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k(a: f64, b: f64, t: f64) -> EnlargedLogLogistic {
        EnlargedLogLogistic::from_parts(a, b, t).unwrap()
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(k(1.3, 2.0, 0.7).cdf(0.0), 0.0);
        assert_eq!(k(0.0, 1.0, 1.0).cdf(1.0), 0.5);
        assert_relative_eq!(k(2.0, 1.0, 2.0).cdf(5.0), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn density_examples() {
        assert_relative_eq!(k(0.0, 1.0, 1.0).pdf(1.0), 0.25, max_relative = 1e-15);
        assert_relative_eq!(k(1.0, 1.0, 1.0).pdf(1.0), 0.25, max_relative = 1e-15);
        assert_eq!(k(0.0, 1.0, 2.0).pdf(0.0), f64::INFINITY);
    }

    #[test]
    fn hazard_examples() {
        assert_relative_eq!(k(1.0, 1.0, 1.0).hazard(1.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(k(0.0, 1.0, 1.0).hazard(1e-12), 1.0, max_relative = 1e-11);
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(k(0.4, 3.0, 1.7).quantile(0.0).unwrap(), 0.0);
        assert_relative_eq!(k(2.0, 1.0, 2.0).quantile(0.5).unwrap(), 5.0, max_relative = 1e-14);
        assert_relative_eq!(k(0.0, 3.0, 1.0).quantile(0.75).unwrap(), 9.0, max_relative = 1e-15);
        assert!(k(0.0, 1.0, 1.0).quantile(1.0).is_err());
    }

    #[test]
    fn compose_odds_examples() {
        let e = crate::Baseline::exponential(1.0).unwrap();
        assert_relative_eq!(
            k(0.0, 1.0, 1.0).compose_odds(&e, core::f64::consts::LN_2),
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            k(1.0, 1.0, 2.0).compose_odds(&e, 1.0),
            libm::exp(2.0) - 1.0,
            max_relative = 1e-13
        );
        assert_eq!(k(1.0, 1.0, 2.0).compose_odds(&e, 0.0), 0.0);
    }

    #[test]
    fn sampling_contract() {
        let e = k(0.0, 1.0, 1.0);
        assert_eq!(e.sample(10, 3).unwrap(), e.sample(10, 3).unwrap());
        assert!(e.sample(0, 3).is_err());
    }
}
