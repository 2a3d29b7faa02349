use core::fmt::Debug;

use crate::error::Result;

/// Which evaluation surfaces a distribution provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub density: bool,
    pub quantile: bool,
}

impl Capabilities {
    pub const ALL: Capabilities = Capabilities {
        density: true,
        quantile: true,
    };
}

/// A distribution on `[0, ∞)` described by its CDF, density and quantile.
///
/// Derived quantities (hazard, reversed hazard, odds, odds rate) have
/// default implementations in terms of `cdf`, `sf` and `pdf`. Where a
/// denominator vanishes they return `f64::INFINITY`.
pub trait ContinuousDistribution: Debug {
    fn cdf(&self, x: f64) -> f64;

    /// Survival function. Implementations should override this when the
    /// upper tail can be computed without cancellation.
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    fn pdf(&self, x: f64) -> f64;

    /// Inverse CDF for `u` in `(0, 1)`.
    fn quantile(&self, u: f64) -> Result<f64>;

    /// Inverse survival function for `q` in `(0, 1)`.
    fn isf(&self, q: f64) -> Result<f64> {
        self.quantile(1.0 - q)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::ALL
    }

    fn hazard(&self, x: f64) -> f64 {
        let s = self.sf(x);
        if s <= 0.0 {
            return f64::INFINITY;
        }
        self.pdf(x) / s
    }

    fn reversed_hazard(&self, x: f64) -> f64 {
        let c = self.cdf(x);
        if c <= 0.0 {
            return f64::INFINITY;
        }
        self.pdf(x) / c
    }

    /// Λ(x) = F(x) / F̄(x).
    fn odds(&self, x: f64) -> f64 {
        let s = self.sf(x);
        if s <= 0.0 {
            return f64::INFINITY;
        }
        self.cdf(x) / s
    }

    /// λ(x) = f(x) / F̄(x)², the derivative of the odds function.
    fn odds_rate(&self, x: f64) -> f64 {
        let s = self.sf(x);
        if s <= 0.0 {
            return f64::INFINITY;
        }
        self.pdf(x) / s / s
    }

    /// Maps `x` through `other⁻¹ ∘ self`, choosing the tail that keeps
    /// full relative precision.
    fn transport_to(&self, other: &dyn ContinuousDistribution, x: f64) -> Result<f64> {
        let c = self.cdf(x);
        if c <= 0.0 {
            return Ok(0.0);
        }
        if c <= 0.5 {
            other.quantile(c)
        } else {
            let s = self.sf(x);
            if s <= 0.0 {
                return Ok(f64::INFINITY);
            }
            other.isf(s)
        }
    }
}

impl<T: ContinuousDistribution + ?Sized> ContinuousDistribution for &T {
    fn cdf(&self, x: f64) -> f64 {
        (**self).cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        (**self).sf(x)
    }
    fn pdf(&self, x: f64) -> f64 {
        (**self).pdf(x)
    }
    fn quantile(&self, u: f64) -> Result<f64> {
        (**self).quantile(u)
    }
    fn isf(&self, q: f64) -> Result<f64> {
        (**self).isf(q)
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn hazard(&self, x: f64) -> f64 {
        (**self).hazard(x)
    }
    fn reversed_hazard(&self, x: f64) -> f64 {
        (**self).reversed_hazard(x)
    }
    fn odds(&self, x: f64) -> f64 {
        (**self).odds(x)
    }
    fn odds_rate(&self, x: f64) -> f64 {
        (**self).odds_rate(x)
    }
}

pub(crate) fn check_probability_open(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(crate::Error::Domain {
            what: "probability",
            value: u,
        })
    }
}
