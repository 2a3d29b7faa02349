use alloc::string::{String, ToString};
use alloc::vec::Vec;

use libm::{fabs, log};
use serde::{Deserialize, Serialize};

use super::{list_cases, verify_with, CaseFlag, CaseReport, Draw, Scenario, StabilityCheck, TheoremCase, WIDE_LOG_ODDS};
use crate::baseline::Baseline;
use crate::error::{Error, Result};
use crate::orders::{classify_shape, GridSpec, ShapeReport};
use crate::params::ParamTriple;
use crate::sampling::UniformStream;

/// Draws per trial spent looking for a scenario that meets the hypothesis.
const ATTEMPTS: usize = 256;
/// Minimum relative distance of strict inequalities from equality.
const MARGIN: f64 = 1e-3;

/// Parameter ranges and sizes for [`run_sweep`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub trials: usize,
    /// Log-uniform range for positive `α`.
    pub alpha: (f64, f64),
    /// Share of draws with `α = 0` exactly.
    pub alpha_zero_share: f64,
    pub beta: (f64, f64),
    pub theta: (f64, f64),
    /// Uniform range for the geometric parameter.
    pub p: (f64, f64),
    pub grid: GridSpec,
    /// Groups per stability trial.
    pub stability_n: usize,
    /// Restrict the sweep to these case ids.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only: Option<Vec<String>>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            trials: 200,
            alpha: (0.01, 4.0),
            alpha_zero_share: 0.1,
            beta: (0.1, 10.0),
            theta: (0.2, 5.0),
            p: (0.1, 1.0),
            grid: GridSpec::default(),
            stability_n: 2000,
            only: None,
        }
    }
}

impl SweepConfig {
    pub fn with_trials(trials: usize) -> Self {
        SweepConfig {
            trials,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Empty("sweep needs at least one trial"));
        }
        let ranges = [("alpha", self.alpha), ("beta", self.beta), ("theta", self.theta)];
        for (name, (lo, hi)) in ranges {
            if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                return Err(Error::invalid(name, "a positive finite range", lo));
            }
        }
        if !(self.p.0 > 0.0 && self.p.0 <= self.p.1 && self.p.1 <= 1.0) {
            return Err(Error::invalid("p", "a range inside (0, 1]", self.p.0));
        }
        if !(0.0..=1.0).contains(&self.alpha_zero_share) {
            return Err(Error::invalid("alpha_zero_share", "in [0, 1]", self.alpha_zero_share));
        }
        self.grid.validate()
    }

    fn includes(&self, id: &str) -> bool {
        self.only.as_ref().is_none_or(|ids| ids.iter().any(|x| x == id))
    }
}

/// Baselines cycled through by the sweep.
pub fn sweep_baselines() -> [Baseline; 4] {
    [
        Baseline::exponential(1.0).expect("valid"),
        Baseline::weibull(2.0, 1.0).expect("valid"),
        Baseline::gamma(4.0, 1.0).expect("valid"),
        Baseline::std_log_logistic(),
    ]
}

/// Per-case aggregate of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub id: String,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<CaseFlag>,
    pub delegated: bool,
    pub trials: usize,
    /// Trials whose hypothesis held.
    pub trials_applicable: usize,
    /// Applicable trials whose numeric verdict matched the conclusion.
    pub agreements: usize,
    pub implication_violations: usize,
    /// Full reports of applicable trials that disagreed, for replay.
    pub disagreements: Vec<CaseReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub trials: usize,
    pub grid: GridSpec,
    pub cases: Vec<CaseSummary>,
}

impl SweepReport {
    /// Disagreements in cases that carry no flag.
    pub fn unflagged_disagreements(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| c.flag.is_none())
            .map(|c| c.disagreements.len())
            .sum()
    }

    pub fn implication_violations(&self) -> usize {
        self.cases.iter().map(|c| c.implication_violations).sum()
    }

    pub fn case(&self, id: &str) -> Option<&CaseSummary> {
        self.cases.iter().find(|c| c.id == id)
    }
}

/// Shape reports of the sweep baselines, computed once per sweep.
#[derive(Debug, Clone)]
pub struct BaselineShapes {
    entries: Vec<(Baseline, ShapeReport)>,
}

impl BaselineShapes {
    pub fn new(grid: &GridSpec) -> Result<Self> {
        let entries = sweep_baselines()
            .into_iter()
            .map(|b| classify_shape(&b, grid).map(|s| (b, s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BaselineShapes { entries })
    }

    /// Baselines meeting the case's shape requirements, or all of them
    /// when none does.
    fn eligible(&self, case: &TheoremCase) -> Vec<(Baseline, ShapeReport)> {
        let fit: Vec<_> = self
            .entries
            .iter()
            .filter(|(_, s)| case.requires.iter().all(|&c| s.has(c)))
            .copied()
            .collect();
        if fit.is_empty() {
            self.entries.clone()
        } else {
            fit
        }
    }
}

/// Runs every registry case (or those selected by `config.only`) for
/// `config.trials` trials. Deterministic in `seed`.
pub fn run_sweep(config: &SweepConfig, seed: u64) -> Result<SweepReport> {
    config.validate()?;
    let shapes = BaselineShapes::new(&config.grid)?;
    let mut cases = Vec::new();
    for (index, case) in list_cases().iter().enumerate() {
        if config.includes(case.id) {
            cases.push(sweep_case(case, index, config, seed, &shapes)?);
        }
    }
    Ok(SweepReport {
        seed,
        trials: config.trials,
        grid: config.grid,
        cases,
    })
}

/// Runs all trials of one case. `index` is the case's registry position,
/// which selects its random stream.
pub fn sweep_case(
    case: &TheoremCase,
    index: usize,
    config: &SweepConfig,
    seed: u64,
    shapes: &BaselineShapes,
) -> Result<CaseSummary> {
    config.validate()?;
    let eligible = shapes.eligible(case);
    let mut summary = CaseSummary {
        id: case.id.to_string(),
        statement: case.statement.to_string(),
        flag: case.flag,
        delegated: case.delegated,
        trials: config.trials,
        trials_applicable: 0,
        agreements: 0,
        implication_violations: 0,
        disagreements: Vec::new(),
    };
    for trial in 0..config.trials {
        let mut rng = UniformStream::with_stream(seed ^ trial as u64, index as u64);
        let (baseline, shape) = eligible[trial % eligible.len()];
        let scenario = choose_scenario(case, &mut rng, config, baseline, &shape);
        let stability = StabilityCheck {
            n: config.stability_n,
            level: 0.01,
            tests: 2 * config.trials,
            seed: rng.next_u64(),
        };
        let report = verify_with(case, &scenario, &shape, &config.grid, &stability)?;
        summary.implication_violations += report.implication_violations;
        if report.hypothesis {
            summary.trials_applicable += 1;
            if report.agreement {
                summary.agreements += 1;
            } else {
                summary.disagreements.push(report);
            }
        }
    }
    Ok(summary)
}

/// Rejection-samples a scenario whose static hypothesis holds with margin.
/// Falls back to a scenario where it fails, so that near-boundary draws are
/// never counted as applicable.
fn choose_scenario(
    case: &TheoremCase,
    rng: &mut UniformStream,
    config: &SweepConfig,
    baseline: Baseline,
    shape: &ShapeReport,
) -> Scenario {
    let mut fallback = None;
    for _ in 0..ATTEMPTS {
        let s = draw(case.draw, rng, config, baseline);
        let c = case.static_conditions(&s, shape);
        if c.ok && c.margin >= MARGIN {
            return s;
        }
        if !c.ok {
            fallback = Some(s);
        }
    }
    fallback.unwrap_or_else(|| draw(case.draw, rng, config, baseline))
}

struct Sampler<'a> {
    rng: &'a mut UniformStream,
    config: &'a SweepConfig,
}

impl Sampler<'_> {
    fn alpha(&mut self) -> f64 {
        if self.rng.next_open() < self.config.alpha_zero_share {
            0.0
        } else {
            self.positive_alpha()
        }
    }

    fn positive_alpha(&mut self) -> f64 {
        self.rng.log_uniform(self.config.alpha.0, self.config.alpha.1)
    }

    fn beta(&mut self) -> f64 {
        self.rng.log_uniform(self.config.beta.0, self.config.beta.1)
    }

    fn theta(&mut self) -> f64 {
        self.rng.log_uniform(self.config.theta.0, self.config.theta.1)
    }

    fn coin(&mut self) -> bool {
        self.rng.next_open() < 0.5
    }

    fn triple(&mut self) -> ParamTriple {
        let (a, b, t) = (self.alpha(), self.beta(), self.theta());
        triple(a, b, t)
    }
}

fn triple(a: f64, b: f64, t: f64) -> ParamTriple {
    ParamTriple::new(a, b, t).expect("sampled parameters are valid")
}

fn draw(kind: Draw, rng: &mut UniformStream, config: &SweepConfig, baseline: Baseline) -> Scenario {
    let mut s = Sampler { rng, config };
    let (params, second) = match kind {
        Draw::Omo1 => (triple(0.0, s.beta(), 1.0), None),
        Draw::Omo => (triple(0.0, s.beta(), s.theta()), None),
        Draw::OmoResolvable => {
            // the crossing sits at baseline odds β^{−1/(θ−1)}
            let limit = WIDE_LOG_ODDS - 6.0;
            let mut p = triple(0.0, s.beta(), s.theta());
            for _ in 0..ATTEMPTS {
                let (b, t) = (s.beta(), s.theta());
                if fabs(t - 1.0) >= 0.05 && fabs(log(b) / (t - 1.0)) <= limit {
                    p = triple(0.0, b, t);
                    break;
                }
            }
            (p, None)
        }
        Draw::Domo | Draw::Ell => (s.triple(), None),
        Draw::DomoUnit => {
            let p = if s.coin() {
                triple(1.0, s.beta(), s.theta())
            } else {
                triple(s.alpha(), s.beta(), 1.0)
            };
            (p, None)
        }
        Draw::EllPair | Draw::DomoEll => (s.triple(), Some(s.triple())),
        Draw::EllPairSameTheta => {
            let p = s.triple();
            (p, Some(triple(s.alpha(), s.beta(), p.theta())))
        }
        Draw::EllPairMixed => {
            let p = s.triple();
            let t1 = if s.coin() { p.theta() } else { s.theta() };
            (p, Some(triple(s.alpha(), s.beta(), t1)))
        }
        Draw::EllPairSameBetaTheta => {
            let p = s.triple();
            (p, Some(triple(s.alpha(), p.beta(), p.theta())))
        }
        Draw::EllPairSameAlphaTheta => {
            let p = s.triple();
            (p, Some(triple(p.alpha(), s.beta(), p.theta())))
        }
        Draw::EllPairSameAlphaBeta => {
            let p = s.triple();
            (p, Some(triple(p.alpha(), p.beta(), s.theta())))
        }
        Draw::EllPairPositive => {
            let p = triple(s.positive_alpha(), s.beta(), s.theta());
            (p, Some(triple(s.positive_alpha(), s.beta(), s.theta())))
        }
        Draw::EllPairSameThetaPositive => {
            let p = triple(s.positive_alpha(), s.beta(), s.theta());
            (p, Some(triple(s.positive_alpha(), s.beta(), p.theta())))
        }
        Draw::EllZeroAlphaPair => {
            let p = triple(0.0, s.beta(), s.theta());
            (p, Some(triple(s.positive_alpha(), s.beta(), s.theta())))
        }
        Draw::EllZeroAlphaPairSameTheta => {
            let p = triple(0.0, s.beta(), s.theta());
            (p, Some(triple(s.positive_alpha(), s.beta(), p.theta())))
        }
        Draw::Geometric => {
            let p = s.triple();
            let prob = s.rng.uniform(config.p.0, config.p.1).min(1.0);
            return Scenario {
                baseline,
                params: p,
                second: None,
                p: Some(prob),
            };
        }
    };
    Scenario {
        baseline,
        params,
        second,
        p: None,
    }
}
