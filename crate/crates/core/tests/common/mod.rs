//! Reference implementations shared by the integration tests. Nothing here
//! calls into the code under test except to read parameters.
#![allow(dead_code)]

use oddsmo_core::sampling::UniformStream;
use oddsmo_core::{Baseline, ParamTriple};
use statrs::distribution::{ContinuousCDF, Gamma};

/// Baseline CDF from closed forms, or statrs for the gamma family.
pub fn baseline_cdf(b: &Baseline, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    match *b {
        Baseline::Exponential { rate } => -(-rate * x).exp_m1(),
        Baseline::Weibull { shape, scale } => -(-(x / scale).powf(shape)).exp_m1(),
        Baseline::StdLogLogistic => x / (1.0 + x),
        Baseline::Gamma { shape, scale } => Gamma::new(shape, 1.0 / scale).unwrap().cdf(x),
    }
}

pub fn baseline_sf(b: &Baseline, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    match *b {
        Baseline::Exponential { rate } => (-rate * x).exp(),
        Baseline::Weibull { shape, scale } => (-(x / scale).powf(shape)).exp(),
        Baseline::StdLogLogistic => 1.0 / (1.0 + x),
        Baseline::Gamma { shape, scale } => Gamma::new(shape, 1.0 / scale).unwrap().sf(x),
    }
}

pub fn baseline_odds(b: &Baseline, x: f64) -> f64 {
    baseline_cdf(b, x) / baseline_sf(b, x)
}

/// `β((α + Λ)^θ − α^θ)` with plain powers.
pub fn distorted(p: &ParamTriple, lam: f64) -> f64 {
    let (a, b, t) = (p.alpha(), p.beta(), p.theta());
    b * ((a + lam).powf(t) - a.powf(t))
}

/// Closed-form ELL survival `1 / ((x/β + α^θ)^{1/θ} + 1 − α)`.
pub fn ell_sf(p: &ParamTriple, x: f64) -> f64 {
    let (a, b, t) = (p.alpha(), p.beta(), p.theta());
    1.0 / ((x / b + a.powf(t)).powf(1.0 / t) + 1.0 - a)
}

pub fn all_baselines() -> Vec<Baseline> {
    vec![
        Baseline::exponential(1.0).unwrap(),
        Baseline::weibull(2.0, 1.0).unwrap(),
        Baseline::gamma(4.0, 1.0).unwrap(),
        Baseline::std_log_logistic(),
        Baseline::gamma(1.13, 116.6).unwrap(),
        Baseline::weibull(0.7, 3.0).unwrap(),
        Baseline::exponential(0.25).unwrap(),
    ]
}

/// Random parameters: `α` log-uniform in [0.01, 4] (10% exactly zero),
/// `β` in [0.1, 10], `θ` in [0.2, 5].
pub fn random_params(rng: &mut UniformStream) -> ParamTriple {
    let a = if rng.next_open() < 0.1 { 0.0 } else { rng.log_uniform(0.01, 4.0) };
    ParamTriple::new(a, rng.log_uniform(0.1, 10.0), rng.log_uniform(0.2, 5.0)).unwrap()
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre of `f` over `[a, b]` with `panels` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in rule {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    sum * 0.5 * h
}

/// `∫ pdf` over `[lo, hi]` in the variable `t = ln x`, where densities with
/// power-law behavior at zero become smooth.
pub fn integrate_log_scale<F: Fn(f64) -> f64>(pdf: F, lo: f64, hi: f64) -> f64 {
    let rule = gauss_legendre(20);
    integrate(|t| {
        let x = t.exp();
        pdf(x) * x
    }, lo.ln(), hi.ln(), 400, &rule)
}

pub fn relative_error(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
    }
}
