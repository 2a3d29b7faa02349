use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::dist::{Capabilities, ContinuousDistribution};
use crate::domo::DistortedOdds;
use crate::ell::EnlargedLogLogistic;
use crate::error::Result;

/// Any distribution constructible from the built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Law {
    Baseline(Baseline),
    Domo(DistortedOdds<Baseline>),
    Ell(EnlargedLogLogistic),
}

impl Law {
    fn inner(&self) -> &dyn ContinuousDistribution {
        match self {
            Law::Baseline(b) => b,
            Law::Domo(d) => d,
            Law::Ell(e) => e,
        }
    }

    pub fn as_domo(&self) -> Option<&DistortedOdds<Baseline>> {
        match self {
            Law::Domo(d) => Some(d),
            _ => None,
        }
    }
}

impl From<Baseline> for Law {
    fn from(b: Baseline) -> Self {
        Law::Baseline(b)
    }
}

impl From<DistortedOdds<Baseline>> for Law {
    fn from(d: DistortedOdds<Baseline>) -> Self {
        Law::Domo(d)
    }
}

impl From<EnlargedLogLogistic> for Law {
    fn from(e: EnlargedLogLogistic) -> Self {
        Law::Ell(e)
    }
}

impl ContinuousDistribution for Law {
    fn cdf(&self, x: f64) -> f64 {
        self.inner().cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        self.inner().sf(x)
    }
    fn pdf(&self, x: f64) -> f64 {
        self.inner().pdf(x)
    }
    fn quantile(&self, u: f64) -> Result<f64> {
        self.inner().quantile(u)
    }
    fn isf(&self, q: f64) -> Result<f64> {
        self.inner().isf(q)
    }
    fn capabilities(&self) -> Capabilities {
        self.inner().capabilities()
    }
    fn hazard(&self, x: f64) -> f64 {
        self.inner().hazard(x)
    }
    fn reversed_hazard(&self, x: f64) -> f64 {
        self.inner().reversed_hazard(x)
    }
    fn odds(&self, x: f64) -> f64 {
        self.inner().odds(x)
    }
    fn odds_rate(&self, x: f64) -> f64 {
        self.inner().odds_rate(x)
    }
}
