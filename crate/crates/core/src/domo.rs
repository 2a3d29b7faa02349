//! The distorted odds Marshall-Olkin family.
//!
//! A d-oMO law `G` over a baseline `F` is defined through its odds,
//! `Λ_G(x) = β((α + Λ_F(x))^θ − α^θ)`, so that `Ḡ = 1 / (1 + Λ_G)`.
//! `α = 0` gives the odds Marshall-Olkin (oMO) subfamily, `α = 0, θ = 1` the
//! classical Marshall-Olkin survival `F̄ / (βF + F̄)` and `(1, 1, θ)` the
//! proportional hazards survival `F̄^θ`.

use alloc::vec::Vec;
use libm::pow;
use serde::{Deserialize, Serialize};

use crate::dist::{check_probability_open, Capabilities, ContinuousDistribution};
use crate::error::{Error, Result};
use crate::params::ParamTriple;
use crate::sampling::UniformStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortedOdds<B> {
    baseline: B,
    params: ParamTriple,
}

impl<B: ContinuousDistribution> DistortedOdds<B> {
    pub fn new(baseline: B, params: ParamTriple) -> Self {
        DistortedOdds { baseline, params }
    }

    /// The oMO law `G_{β,θ}` (α = 0).
    pub fn omo(baseline: B, beta: f64, theta: f64) -> Result<Self> {
        Ok(Self::new(baseline, ParamTriple::omo(beta, theta)?))
    }

    pub fn baseline(&self) -> &B {
        &self.baseline
    }

    pub fn params(&self) -> ParamTriple {
        self.params
    }

    /// Same baseline, different parameters.
    pub fn with_params(&self, params: ParamTriple) -> Self
    where
        B: Clone,
    {
        Self::new(self.baseline.clone(), params)
    }

    /// Baseline odds `Λ_F = F / F̄`, both sides evaluated directly.
    fn baseline_odds(&self, x: f64) -> f64 {
        self.baseline.odds(x)
    }

    /// `Λ_G(x)`.
    pub fn odds_at(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.params.distort(self.baseline_odds(x))
    }

    /// The distribution function written directly in terms of `F`:
    /// `G = β((α + (1−α)F)^θ − (αF̄)^θ) / (F̄^θ + β((α + (1−α)F)^θ − (αF̄)^θ))`.
    /// Used as an algebraic cross-check of [`cdf`](ContinuousDistribution::cdf).
    pub fn cdf_from_baseline_form(&self, x: f64) -> f64 {
        let f = self.baseline.cdf(x);
        let fbar = self.baseline.sf(x);
        let (a, b, t) = (
            self.params.alpha(),
            self.params.beta(),
            self.params.theta(),
        );
        let num = b * (pow(a + (1.0 - a) * f, t) - pow(a * fbar, t));
        num / (pow(fbar, t) + num)
    }

    /// `βθ · h_F(x) · T(Λ_F(x))`.
    pub fn hazard_factorized(&self, x: f64) -> f64 {
        let p = self.params;
        p.beta() * p.theta() * self.baseline.hazard(x) * p.t_factor(self.baseline_odds(x))
    }

    /// Maps a target odds value of `G` back to an abscissa.
    fn quantile_at_odds(&self, target: f64) -> Result<f64> {
        let lam_f = self.params.undistort(target);
        if lam_f <= 0.0 {
            return Ok(0.0);
        }
        if lam_f.is_infinite() {
            return Ok(f64::INFINITY);
        }
        if lam_f <= 1.0 {
            self.baseline.quantile(lam_f / (1.0 + lam_f))
        } else {
            self.baseline.isf(1.0 / (1.0 + lam_f))
        }
    }

    /// `n` inverse-transform draws from a generator seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Empty("sample count must be >= 1"));
        }
        let mut stream = UniformStream::new(seed);
        (0..n).map(|_| self.quantile(stream.next_open())).collect()
    }
}

impl<B: ContinuousDistribution> ContinuousDistribution for DistortedOdds<B> {
    fn cdf(&self, x: f64) -> f64 {
        let lam = self.odds_at(x);
        if lam.is_infinite() {
            return 1.0;
        }
        lam / (1.0 + lam)
    }

    fn sf(&self, x: f64) -> f64 {
        1.0 / (1.0 + self.odds_at(x))
    }

    /// `g = βθ(α + Λ_F)^{θ−1} · Ḡ² / F̄ · h_F`.
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let p = self.params;
        let lam_f = self.baseline_odds(x);
        let pow_term = p.shifted_pow_theta_minus_one(lam_f);
        if x == 0.0 && pow_term.is_infinite() {
            return f64::INFINITY;
        }
        let fbar = self.baseline.sf(x);
        if fbar <= 0.0 {
            return 0.0;
        }
        let gbar = 1.0 / (1.0 + p.distort(lam_f));
        let rate = self.baseline.pdf(x) / fbar / fbar;
        p.beta() * p.theta() * pow_term * rate * gbar * gbar
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        check_probability_open(u)?;
        self.quantile_at_odds(u / (1.0 - u))
    }

    fn isf(&self, q: f64) -> Result<f64> {
        check_probability_open(q)?;
        self.quantile_at_odds((1.0 - q) / q)
    }

    fn capabilities(&self) -> Capabilities {
        self.baseline.capabilities()
    }

    fn hazard(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let p = self.params;
        let lam_f = self.baseline_odds(x);
        let pow_term = p.shifted_pow_theta_minus_one(lam_f);
        if x == 0.0 && pow_term.is_infinite() {
            return f64::INFINITY;
        }
        self.hazard_factorized(x)
    }

    fn odds(&self, x: f64) -> f64 {
        self.odds_at(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::Baseline;
    use approx::assert_relative_eq;
    use core::f64::consts::LN_2;
    use libm::exp;

    fn exp1() -> Baseline {
        Baseline::exponential(1.0).unwrap()
    }

    fn domo(a: f64, b: f64, t: f64) -> DistortedOdds<Baseline> {
        DistortedOdds::new(exp1(), ParamTriple::new(a, b, t).unwrap())
    }

    #[test]
    fn identity_distortion() {
        let g = domo(0.0, 1.0, 1.0);
        for &x in &[0.01, 0.5, 2.0, 9.0] {
            assert_relative_eq!(g.cdf(x), exp1().cdf(x), max_relative = 1e-14);
            assert_relative_eq!(g.pdf(x), exp1().pdf(x), max_relative = 1e-14);
            assert_relative_eq!(g.hazard(x), 1.0, max_relative = 1e-14);
        }
        assert_relative_eq!(g.quantile(0.5).unwrap(), LN_2, max_relative = 1e-14);
    }

    #[test]
    fn odds_examples() {
        assert_relative_eq!(domo(1.0, 2.0, 1.0).odds_at(LN_2), 2.0, max_relative = 1e-14);
        assert_relative_eq!(domo(0.0, 1.0, 2.0).odds_at(LN_2), 1.0, max_relative = 1e-14);
        assert_eq!(domo(1.3, 0.7, 2.2).odds_at(0.0), 0.0);
        assert_eq!(domo(1.3, 0.7, 2.2).cdf(0.0), 0.0);
    }

    #[test]
    fn survival_examples() {
        assert_relative_eq!(domo(0.0, 2.0, 1.0).sf(LN_2), 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(domo(1.0, 1.0, 2.0).sf(1.0), exp(-2.0), max_relative = 1e-14);
    }

    #[test]
    fn phr_density_and_hazard() {
        let g = domo(1.0, 1.0, 2.0);
        assert_relative_eq!(g.pdf(1.0), 2.0 * exp(-2.0), max_relative = 1e-13);
        for &x in &[0.001, 0.3, 4.0, 20.0] {
            assert_relative_eq!(g.hazard(x), 2.0, max_relative = 1e-12);
        }
        let u = 1.0 - exp(-2.0);
        assert_relative_eq!(g.quantile(u).unwrap(), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn alpha_zero_small_theta_is_singular_at_origin() {
        let g = domo(0.0, 1.0, 0.5);
        assert_eq!(g.pdf(0.0), f64::INFINITY);
        assert_eq!(g.hazard(0.0), f64::INFINITY);
    }

    #[test]
    fn negative_alpha_rejected() {
        assert!(ParamTriple::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn sample_is_deterministic() {
        let g = domo(1.0, 1.0, 2.0);
        assert_eq!(g.sample(64, 9).unwrap(), g.sample(64, 9).unwrap());
        assert_ne!(g.sample(64, 9).unwrap(), g.sample(64, 10).unwrap());
        assert!(g.sample(0, 9).is_err());
    }
}
