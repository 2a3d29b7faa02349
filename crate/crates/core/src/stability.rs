//! Monte Carlo check of geometric extreme stability.
//!
//! If `N` is geometric on `{1, 2, ...}` with `P(N = k) = p(1 − p)^{k−1}` and
//! `X₁, X₂, ...` are i.i.d. `G_{α,β,θ}`, then `min(X₁..X_N)` follows
//! `G_{α,β/p,θ}` and `max(X₁..X_N)` follows `G_{α,βp,θ}`.

use alloc::vec::Vec;
use libm::sqrt;
use serde::{Deserialize, Serialize};

use crate::dist::ContinuousDistribution;
use crate::domo::DistortedOdds;
use crate::error::{Error, Result};
use crate::params::ParamTriple;
use crate::sampling::UniformStream;

/// Longest geometric group drawn before truncation.
pub const GROUP_CAP: u64 = 10_000_000;

/// Kolmogorov-Smirnov 1% critical value for `n` samples (asymptotic).
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / sqrt(n as f64)
}

/// One-sample Kolmogorov-Smirnov distance of sorted `samples` to `cdf`.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Empty("KS distance needs at least one sample"));
    }
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let c = cdf(x);
        let hi = (i + 1) as f64 / n - c;
        let lo = c - i as f64 / n;
        d = d.max(hi.abs()).max(lo.abs());
    }
    Ok(d.min(1.0))
}

/// Sorted group minima and maxima from a geometric-extremes experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeSamples {
    pub minima: Vec<f64>,
    pub maxima: Vec<f64>,
    pub cap_hits: u64,
    pub mean_group_size: f64,
}

/// Draws `n` groups `(N, X₁..X_N)` from `d` and records each group's extremes.
///
/// The quantile function is monotone, so each group only transforms its
/// smallest and largest uniform.
pub fn geometric_extremes<D: ContinuousDistribution + ?Sized>(
    d: &D,
    p: f64,
    n: usize,
    seed: u64,
) -> Result<ExtremeSamples> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain {
            what: "geometric success probability p (need 0 < p <= 1)",
            value: p,
        });
    }
    if n < 100 {
        return Err(Error::Domain {
            what: "group count n (need n >= 100)",
            value: n as f64,
        });
    }
    let mut stream = UniformStream::new(seed);
    let mut minima = Vec::with_capacity(n);
    let mut maxima = Vec::with_capacity(n);
    let mut cap_hits = 0;
    let mut total: u64 = 0;
    for _ in 0..n {
        let (k, capped) = stream.geometric(p, GROUP_CAP);
        cap_hits += capped as u64;
        total += k;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for _ in 0..k {
            let u = stream.next_open();
            lo = lo.min(u);
            hi = hi.max(u);
        }
        minima.push(d.quantile(lo)?);
        maxima.push(d.quantile(hi)?);
    }
    minima.sort_by(f64::total_cmp);
    maxima.sort_by(f64::total_cmp);
    Ok(ExtremeSamples {
        minima,
        maxima,
        cap_hits,
        mean_group_size: total as f64 / n as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub params: ParamTriple,
    pub p: f64,
    pub n: usize,
    pub seed: u64,
    /// KS distance of the minima to `G_{α,β/p,θ}`.
    pub ks_min: f64,
    /// KS distance of the maxima to `G_{α,βp,θ}`.
    pub ks_max: f64,
    pub critical: f64,
    pub min_pass: bool,
    pub max_pass: bool,
    pub cap_hits: u64,
    pub mean_group_size: f64,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.min_pass && self.max_pass
    }
}

/// Runs the experiment and compares the extremes with the rescaled laws.
pub fn geometric_extreme_experiment<B: ContinuousDistribution + Clone>(
    d: &DistortedOdds<B>,
    p: f64,
    n: usize,
    seed: u64,
) -> Result<StabilityReport> {
    let params = d.params();
    let min_law = d.with_params(params.with_beta(params.beta() / p)?);
    let max_law = d.with_params(params.with_beta(params.beta() * p)?);
    experiment_against(d, &min_law, &max_law, p, n, seed)
}

/// Same experiment, but scored against arbitrary predicted laws. Useful as a
/// negative control.
pub fn experiment_against<B: ContinuousDistribution + Clone>(
    d: &DistortedOdds<B>,
    min_law: &dyn ContinuousDistribution,
    max_law: &dyn ContinuousDistribution,
    p: f64,
    n: usize,
    seed: u64,
) -> Result<StabilityReport> {
    let s = geometric_extremes(d, p, n, seed)?;
    let ks_min = ks_distance(&s.minima, |x| min_law.cdf(x))?;
    let ks_max = ks_distance(&s.maxima, |x| max_law.cdf(x))?;
    let critical = ks_critical_1pct(n);
    Ok(StabilityReport {
        params: d.params(),
        p,
        n,
        seed,
        ks_min,
        ks_max,
        critical,
        min_pass: ks_min < critical,
        max_pass: ks_max < critical,
        cap_hits: s.cap_hits,
        mean_group_size: s.mean_group_size,
    })
}
