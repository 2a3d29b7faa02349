//! Baseline distributions and their odds/hazard profile.

use libm::{exp, expm1, lgamma, log, log1p, pow};
use serde::{Deserialize, Serialize};

use crate::dist::{check_probability_open, ContinuousDistribution};
use crate::error::{Error, Result};
use crate::special::{regularized_gamma, solve_increasing};

/// Built-in baseline families, all supported on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Baseline {
    Exponential { rate: f64 },
    /// Shape/scale parameterization; density `x^{k-1} e^{-x/s} / (Γ(k) s^k)`.
    Gamma { shape: f64, scale: f64 },
    Weibull { shape: f64, scale: f64 },
    /// `x / (1 + x)`.
    StdLogLogistic,
}

fn positive(field: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(field, "> 0", v))
    }
}

impl Baseline {
    pub fn exponential(rate: f64) -> Result<Self> {
        Ok(Baseline::Exponential {
            rate: positive("rate", rate)?,
        })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        Ok(Baseline::Gamma {
            shape: positive("shape", shape)?,
            scale: positive("scale", scale)?,
        })
    }

    pub fn gamma_with_rate(shape: f64, rate: f64) -> Result<Self> {
        let rate = positive("rate", rate)?;
        Self::gamma(shape, 1.0 / rate)
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        Ok(Baseline::Weibull {
            shape: positive("shape", shape)?,
            scale: positive("scale", scale)?,
        })
    }

    pub fn std_log_logistic() -> Self {
        Baseline::StdLogLogistic
    }

    /// Builds a baseline from a family tag and its positional parameters.
    ///
    /// Tags: `exp` (rate), `gamma` (shape, scale), `gammarate` (shape, rate),
    /// `weibull` (shape, scale), `loglogistic` (none).
    pub fn from_parts(tag: &str, params: &[f64]) -> Result<Self> {
        let arity = |family: &'static str, expected: usize| {
            if params.len() == expected {
                Ok(())
            } else {
                Err(Error::Arity {
                    family,
                    expected,
                    got: params.len(),
                })
            }
        };
        match tag {
            "exp" => {
                arity("exp", 1)?;
                Self::exponential(params[0])
            }
            "gamma" => {
                arity("gamma", 2)?;
                Self::gamma(params[0], params[1])
            }
            "gammarate" => {
                arity("gammarate", 2)?;
                Self::gamma_with_rate(params[0], params[1])
            }
            "weibull" => {
                arity("weibull", 2)?;
                Self::weibull(params[0], params[1])
            }
            "loglogistic" => {
                arity("loglogistic", 0)?;
                Ok(Self::std_log_logistic())
            }
            other => Err(Error::UnknownFamily(other.into())),
        }
    }

    /// Odds/hazard summary at `x`.
    pub fn profile(&self, x: f64) -> ProfilePoint {
        ProfilePoint::of(self, x)
    }

    fn gamma_quantile(shape: f64, scale: f64, level: f64, upper: bool) -> f64 {
        let log_norm = lgamma(shape);
        let density = move |y: f64| {
            if y <= 0.0 {
                return 0.0;
            }
            exp((shape - 1.0) * log(y) - y - log_norm)
        };
        let guess = if upper {
            let t = -log(level);
            (t - log_norm + (shape - 1.0) * log(t.max(1.0))).max(shape)
        } else {
            // P(a, y) ≈ y^a / Γ(a + 1) near zero
            let small = exp((log(level) + lgamma(shape + 1.0)) / shape);
            if small < shape {
                small
            } else {
                shape
            }
        };
        let y = if upper {
            solve_increasing(
                |y| (level - regularized_gamma(shape, y).1, density(y)),
                0.0,
                guess,
                1e-15,
            )
        } else {
            solve_increasing(
                |y| (regularized_gamma(shape, y).0 - level, density(y)),
                0.0,
                guess,
                1e-15,
            )
        };
        y * scale
    }
}

impl ContinuousDistribution for Baseline {
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            Baseline::Exponential { rate } => -expm1(-rate * x),
            Baseline::Gamma { shape, scale } => regularized_gamma(shape, x / scale).0,
            Baseline::Weibull { shape, scale } => -expm1(-pow(x / scale, shape)),
            Baseline::StdLogLogistic => {
                if x.is_infinite() {
                    1.0
                } else {
                    x / (1.0 + x)
                }
            }
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            Baseline::Exponential { rate } => exp(-rate * x),
            Baseline::Gamma { shape, scale } => regularized_gamma(shape, x / scale).1,
            Baseline::Weibull { shape, scale } => exp(-pow(x / scale, shape)),
            Baseline::StdLogLogistic => 1.0 / (1.0 + x),
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match *self {
            Baseline::Exponential { rate } => rate * exp(-rate * x),
            Baseline::Gamma { shape, scale } => {
                if x == 0.0 {
                    return match shape {
                        s if s < 1.0 => f64::INFINITY,
                        1.0 => 1.0 / scale,
                        _ => 0.0,
                    };
                }
                let y = x / scale;
                exp((shape - 1.0) * log(y) - y - lgamma(shape)) / scale
            }
            Baseline::Weibull { shape, scale } => {
                if x == 0.0 {
                    return match shape {
                        k if k < 1.0 => f64::INFINITY,
                        1.0 => 1.0 / scale,
                        _ => 0.0,
                    };
                }
                let y = x / scale;
                let yk = pow(y, shape);
                shape / scale * yk / y * exp(-yk)
            }
            Baseline::StdLogLogistic => 1.0 / ((1.0 + x) * (1.0 + x)),
        }
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        check_probability_open(u)?;
        Ok(match *self {
            Baseline::Exponential { rate } => -log1p(-u) / rate,
            Baseline::Gamma { shape, scale } => {
                if u <= 0.5 {
                    Self::gamma_quantile(shape, scale, u, false)
                } else {
                    Self::gamma_quantile(shape, scale, 1.0 - u, true)
                }
            }
            Baseline::Weibull { shape, scale } => scale * pow(-log1p(-u), 1.0 / shape),
            Baseline::StdLogLogistic => u / (1.0 - u),
        })
    }

    fn isf(&self, q: f64) -> Result<f64> {
        check_probability_open(q)?;
        Ok(match *self {
            Baseline::Exponential { rate } => -log(q) / rate,
            Baseline::Gamma { shape, scale } => {
                if q <= 0.5 {
                    Self::gamma_quantile(shape, scale, q, true)
                } else {
                    Self::gamma_quantile(shape, scale, 1.0 - q, false)
                }
            }
            Baseline::Weibull { shape, scale } => scale * pow(-log(q), 1.0 / shape),
            Baseline::StdLogLogistic => (1.0 - q) / q,
        })
    }

    fn odds(&self, x: f64) -> f64 {
        match *self {
            Baseline::StdLogLogistic => x.max(0.0),
            Baseline::Exponential { rate } => expm1(rate * x.max(0.0)),
            _ => {
                let s = self.sf(x);
                if s <= 0.0 {
                    f64::INFINITY
                } else {
                    self.cdf(x) / s
                }
            }
        }
    }
}

/// Distributional summary of a law at a single abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub cdf: f64,
    pub pdf: f64,
    pub survival: f64,
    pub hazard: f64,
    pub reversed_hazard: f64,
    pub odds: f64,
    pub odds_rate: f64,
}

impl ProfilePoint {
    /// Evaluates the profile of any distribution. Hazard, odds and odds rate
    /// are `+∞` where the survival is zero; the reversed hazard is `+∞`
    /// where the CDF is zero.
    pub fn of<D: ContinuousDistribution + ?Sized>(d: &D, x: f64) -> Self {
        let cdf = d.cdf(x);
        let survival = d.sf(x);
        let pdf = d.pdf(x);
        let (hazard, odds, odds_rate) = if survival > 0.0 {
            (pdf / survival, cdf / survival, pdf / survival / survival)
        } else {
            (f64::INFINITY, f64::INFINITY, f64::INFINITY)
        };
        let reversed_hazard = if cdf > 0.0 { pdf / cdf } else { f64::INFINITY };
        ProfilePoint {
            x,
            cdf,
            pdf,
            survival,
            hazard,
            reversed_hazard,
            odds,
            odds_rate,
        }
    }
}
