//! A registry of order and shape results for the oMO, d-oMO and ELL
//! families, each with a hypothesis predicate and an expected conclusion,
//! plus a seeded sweep that cross-checks predicates against the numeric
//! order checkers.
//!
//! Comparison symbols `(α₁, β₁, θ₁)` live in [`Scenario::second`]. All
//! orders follow the conventions documented in [`crate::orders`].

mod cases;
mod sweep;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use libm::{fabs, log, sqrt};
use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::dist::ContinuousDistribution;
use crate::domo::DistortedOdds;
use crate::ell::EnlargedLogLogistic;
use crate::error::{Error, Result};
use crate::law::Law;
use crate::orders::{
    build_grid, check_order, classify_shape, st_by_odds, GridSpec, OrderStatus, Relation,
    ShapeClass, ShapeReport,
};
use crate::params::ParamTriple;
use crate::stability::{geometric_extremes, ks_distance};

pub use cases::list_cases;
pub use sweep::{run_sweep, sweep_baselines, sweep_case, BaselineShapes, CaseSummary, SweepConfig, SweepReport};

/// Why a case is reported apart from the main verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseFlag {
    /// The statement contains an apparent typo; this entry implements the
    /// text as printed.
    Typo,
    /// The statement as printed is contradicted by its own argument; this
    /// entry keeps the printed form next to a corrected sibling case.
    AsPrinted,
}

/// A law built from a [`Scenario`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawRef {
    /// The baseline `F`.
    Baseline,
    /// `G_{α,β,θ}` over `F`.
    Domo,
    /// `G_{α₁,β₁,θ₁}` over `F`.
    DomoSecond,
    /// `K_{α,β,θ}`.
    Ell,
    /// `K_{α₁,β₁,θ₁}`.
    EllSecond,
    /// `K_{0,β,1}`, the log-logistic law with the first scale.
    LogLogistic,
    /// `K_{0,β,θ}`.
    EllZeroAlpha,
}

impl LawRef {
    fn symbol(self) -> &'static str {
        match self {
            LawRef::Baseline => "F",
            LawRef::Domo => "G",
            LawRef::DomoSecond => "G1",
            LawRef::Ell => "K",
            LawRef::EllSecond => "K1",
            LawRef::LogLogistic => "L",
            LawRef::EllZeroAlpha => "K0",
        }
    }

    fn build(self, s: &Scenario) -> Result<Law> {
        let p = s.params;
        Ok(match self {
            LawRef::Baseline => Law::Baseline(s.baseline),
            LawRef::Domo => Law::Domo(DistortedOdds::new(s.baseline, p)),
            LawRef::DomoSecond => Law::Domo(DistortedOdds::new(s.baseline, s.second()?)),
            LawRef::Ell => Law::Ell(EnlargedLogLogistic::new(p)),
            LawRef::EllSecond => Law::Ell(EnlargedLogLogistic::new(s.second()?)),
            LawRef::LogLogistic => Law::Ell(EnlargedLogLogistic::from_parts(0.0, p.beta(), 1.0)?),
            LawRef::EllZeroAlpha => {
                Law::Ell(EnlargedLogLogistic::from_parts(0.0, p.beta(), p.theta())?)
            }
        })
    }
}

/// What a case asserts once its hypothesis holds.
#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion {
    Shape(LawRef, ShapeClass),
    /// `left ≤ right` in the given relation.
    Order(Relation, LawRef, LawRef),
    /// Neither `left ≤ right` nor `right ≤ left`.
    Crosses(Relation, LawRef, LawRef),
    /// `min(β, 1)·h_F ≤ h_G ≤ max(β, 1)·h_F`.
    HazardSandwich,
    /// `Λ_left ≤ Λ_right` pointwise.
    OddsBelow(LawRef, LawRef),
    All(Vec<Conclusion>),
    /// Extremes of a geometric number of `G` draws follow `G` with `β/p`
    /// (minimum) and `βp` (maximum).
    GeometricStability,
}

/// Conjunction of inequality conditions with the smallest relative margin
/// by which the strict ones are met.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Conds {
    pub ok: bool,
    pub margin: f64,
}

impl Conds {
    pub fn new() -> Self {
        Conds {
            ok: true,
            margin: f64::INFINITY,
        }
    }

    fn strict(mut self, a: f64, b: f64) -> Self {
        let ok = a > b;
        self.ok &= ok;
        if ok {
            let m = if a.is_finite() && b.is_finite() {
                (a - b) / fabs(a).max(fabs(b)).max(1.0)
            } else {
                1.0
            };
            self.margin = self.margin.min(m);
        }
        self
    }

    fn weak(mut self, a: f64, b: f64) -> Self {
        self.ok &= a >= b;
        self
    }

    /// `a > b`.
    pub fn gt(self, a: f64, b: f64) -> Self {
        self.strict(a, b)
    }
    /// `a < b`.
    pub fn lt(self, a: f64, b: f64) -> Self {
        self.strict(b, a)
    }
    /// `a ≥ b`.
    pub fn ge(self, a: f64, b: f64) -> Self {
        self.weak(a, b)
    }
    /// `a ≤ b`.
    pub fn le(self, a: f64, b: f64) -> Self {
        self.weak(b, a)
    }

    pub fn when(mut self, cond: bool) -> Self {
        self.ok &= cond;
        self
    }

    /// Disjunction: the better of two alternatives.
    pub fn or(self, other: Conds) -> Self {
        match (self.ok, other.ok) {
            (true, true) => Conds {
                ok: true,
                margin: self.margin.max(other.margin),
            },
            (true, false) => self,
            (false, true) => other,
            (false, false) => Conds {
                ok: false,
                margin: 0.0,
            },
        }
    }
}

/// Quantities a hypothesis predicate may read.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Inputs {
    pub p: ParamTriple,
    /// The second triple, or a copy of the first when the case has none.
    pub q: ParamTriple,
    /// Baseline density at the origin.
    pub f0: f64,
}

/// How a trial draws its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Draw {
    /// `(0, β, 1)`.
    Omo1,
    /// `(0, β, θ)`.
    Omo,
    /// `(0, β, θ)` whose st crossing lies within the wide grid.
    OmoResolvable,
    Domo,
    /// `α = 1` or `θ = 1`, alternating.
    DomoUnit,
    Ell,
    EllPair,
    EllPairSameTheta,
    /// Half independent pairs, half pairs sharing `θ`.
    EllPairMixed,
    EllPairSameBetaTheta,
    EllPairSameAlphaTheta,
    EllPairSameAlphaBeta,
    EllPairPositive,
    EllPairSameThetaPositive,
    EllZeroAlphaPair,
    EllZeroAlphaPairSameTheta,
    /// A d-oMO triple and an ELL triple.
    DomoEll,
    /// A d-oMO triple and a geometric parameter `p`.
    Geometric,
}

impl Draw {
    fn needs_second(self) -> bool {
        !matches!(
            self,
            Draw::Omo1 | Draw::Omo | Draw::OmoResolvable | Draw::Domo | Draw::DomoUnit | Draw::Ell | Draw::Geometric
        )
    }
}

/// Grid used for a case's numeric checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GridChoice {
    Standard,
    /// Log-odds levels in `[−WIDE_LOG_ODDS, WIDE_LOG_ODDS]`, for crossings
    /// deep in a tail.
    Wide,
}

pub(crate) const WIDE_LOG_ODDS: f64 = 36.0;

/// One registry entry.
#[derive(Debug, Clone)]
pub struct TheoremCase {
    pub id: &'static str,
    /// Hypothesis and conclusion in plain notation.
    pub statement: &'static str,
    /// Shape classes the baseline must belong to.
    pub requires: &'static [ShapeClass],
    pub conclusion: Conclusion,
    pub flag: Option<CaseFlag>,
    /// Checked by Monte Carlo rather than on a grid.
    pub delegated: bool,
    /// A numeric order check that is part of the hypothesis.
    pub premise: Option<(Relation, LawRef, LawRef)>,
    pub(crate) hypothesis: fn(&Inputs) -> Conds,
    pub(crate) draw: Draw,
    pub(crate) grid: GridChoice,
}

impl TheoremCase {
    pub fn needs_second(&self) -> bool {
        self.draw.needs_second()
    }

    pub fn needs_p(&self) -> bool {
        self.draw == Draw::Geometric
    }

    fn check_scenario(&self, s: &Scenario) -> Result<()> {
        if self.needs_second() && s.second.is_none() {
            return Err(Error::Capability(format!("case {} needs a second parameter triple", self.id)));
        }
        if self.needs_p() && s.p.is_none() {
            return Err(Error::Capability(format!("case {} needs a geometric parameter p", self.id)));
        }
        Ok(())
    }

    /// Parameter and shape conditions, without the numeric premise.
    pub(crate) fn static_conditions(&self, s: &Scenario, shape: &ShapeReport) -> Conds {
        let inputs = Inputs {
            p: s.params,
            q: s.second.unwrap_or(s.params),
            f0: s.baseline.pdf(0.0),
        };
        let shaped = self.requires.iter().all(|&c| shape.has(c));
        (self.hypothesis)(&inputs).when(shaped)
    }

    fn grid_spec(&self, base: &GridSpec) -> GridSpec {
        match self.grid {
            GridChoice::Standard => *base,
            GridChoice::Wide => GridSpec {
                count: 2 * base.count - 1,
                levels: crate::orders::Levels::LogOdds {
                    lo: -WIDE_LOG_ODDS,
                    hi: WIDE_LOG_ODDS,
                },
                slack: base.slack,
            },
        }
    }
}

/// Looks up a case by id.
pub fn find_case(id: &str) -> Result<TheoremCase> {
    list_cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownFamily(format!("theorem case `{id}`")))
}

/// Baseline and parameters for one evaluation of a case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub baseline: Baseline,
    pub params: ParamTriple,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<ParamTriple>,
    /// Geometric success probability for stability cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl Scenario {
    pub fn single(baseline: Baseline, params: ParamTriple) -> Self {
        Scenario {
            baseline,
            params,
            second: None,
            p: None,
        }
    }

    pub fn pair(baseline: Baseline, params: ParamTriple, second: ParamTriple) -> Self {
        Scenario {
            second: Some(second),
            ..Scenario::single(baseline, params)
        }
    }

    fn second(&self) -> Result<ParamTriple> {
        self.second
            .ok_or_else(|| Error::Capability("scenario has no second parameter triple".to_string()))
    }
}

/// One numeric check performed while verifying a case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub check: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_violation: Option<f64>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub scenario: Scenario,
    /// Predicate value; the conclusion is only checked when it is true.
    pub hypothesis: bool,
    /// `hypothesis ⇒ numeric verdict matches the conclusion`.
    pub agreement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<CaseFlag>,
    pub observations: Vec<Observation>,
    /// Violations of `lr ⇒ hr, rh` and `hr, rh ⇒ st` seen on the way.
    pub implication_violations: usize,
}

/// Evaluates the hypothesis of case `id` on `scenario`, classifying the
/// baseline on the default grid.
pub fn evaluate_hypotheses(id: &str, scenario: &Scenario) -> Result<bool> {
    let case = find_case(id)?;
    let grid = GridSpec::default();
    let shape = classify_shape(&scenario.baseline, &grid)?;
    let (holds, _) = hypothesis_with(&case, scenario, &shape, &grid)?;
    Ok(holds)
}

/// Hypothesis value together with the observation made by a numeric
/// premise, if the case has one.
fn hypothesis_with(
    case: &TheoremCase,
    scenario: &Scenario,
    shape: &ShapeReport,
    grid: &GridSpec,
) -> Result<(bool, Option<Observation>)> {
    case.check_scenario(scenario)?;
    if !case.static_conditions(scenario, shape).ok {
        return Ok((false, None));
    }
    match case.premise {
        None => Ok((true, None)),
        Some((relation, left, right)) => {
            let obs = order_observation(relation, left, right, scenario, grid)?;
            let holds = obs.agrees;
            Ok((holds, Some(Observation { check: format!("premise {}", obs.check), ..obs })))
        }
    }
}

/// Verifies case `id` on one scenario.
pub fn verify_case(id: &str, scenario: &Scenario, grid: &GridSpec) -> Result<CaseReport> {
    let case = find_case(id)?;
    let shape = classify_shape(&scenario.baseline, grid)?;
    verify_with(&case, scenario, &shape, grid, &StabilityCheck::default())
}

/// Monte Carlo settings for [`Conclusion::GeometricStability`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityCheck {
    pub n: usize,
    /// Family-wise significance level of the KS tests.
    pub level: f64,
    /// Number of KS tests sharing that level.
    pub tests: usize,
    pub seed: u64,
}

impl Default for StabilityCheck {
    fn default() -> Self {
        StabilityCheck {
            n: 2000,
            level: 0.01,
            tests: 2,
            seed: 0,
        }
    }
}

impl StabilityCheck {
    /// Bonferroni-corrected asymptotic KS critical value.
    pub fn critical(&self) -> f64 {
        let per_test = self.level / self.tests.max(1) as f64;
        sqrt(-log(per_test / 2.0) / 2.0) / sqrt(self.n as f64)
    }
}

pub(crate) fn verify_with(
    case: &TheoremCase,
    scenario: &Scenario,
    shape: &ShapeReport,
    base_grid: &GridSpec,
    stability: &StabilityCheck,
) -> Result<CaseReport> {
    let grid = case.grid_spec(base_grid);
    let (hypothesis, premise) = hypothesis_with(case, scenario, shape, &grid)?;
    let mut observations: Vec<Observation> = premise.into_iter().collect();
    let mut implication_violations = 0;
    let mut agreement = true;
    if hypothesis {
        let mut found = Vec::new();
        conclude(&case.conclusion, scenario, &grid, stability, &mut found, &mut implication_violations)?;
        agreement = found.iter().all(|o| o.agrees);
        observations.extend(found);
    }
    Ok(CaseReport {
        id: case.id.to_string(),
        scenario: *scenario,
        hypothesis,
        agreement,
        flag: case.flag,
        observations,
        implication_violations,
    })
}

fn conclude(
    conclusion: &Conclusion,
    s: &Scenario,
    grid: &GridSpec,
    stability: &StabilityCheck,
    out: &mut Vec<Observation>,
    implication_violations: &mut usize,
) -> Result<()> {
    match conclusion {
        Conclusion::Shape(law, class) => {
            let d = law.build(s)?;
            let report = classify_shape(&d, grid)?;
            let holds = report.has(*class);
            out.push(Observation {
                check: format!("{}({})", shape_tag(*class), law.symbol()),
                outcome: if holds { "true" } else { "false" }.to_string(),
                witness: None,
                max_violation: None,
                agrees: holds,
            });
        }
        Conclusion::Order(relation, left, right) => {
            let mut obs = order_observation(*relation, *left, *right, s, grid)?;
            if obs.agrees {
                // a weaker order failing refutes a stronger one that only
                // held on the grid
                let failed = implied_orders(*relation, *left, *right, s, grid)?;
                if failed > 0 {
                    *implication_violations += failed;
                    obs.agrees = false;
                    obs.outcome = "implied order fails".to_string();
                }
            }
            out.push(obs);
        }
        Conclusion::Crosses(relation, left, right) => {
            let (l, r) = (left.build(s)?, right.build(s)?);
            let v = check_order(*relation, &l, &r, grid)?;
            out.push(Observation {
                check: format!("{}({}, {}) crosses", relation, left.symbol(), right.symbol()),
                outcome: v.status.to_string(),
                witness: v.witness,
                max_violation: Some(v.max_violation),
                agrees: v.status == OrderStatus::Crosses && v.witness.is_some_and(f64::is_finite),
            });
        }
        Conclusion::HazardSandwich => out.push(hazard_sandwich(s, grid)?),
        Conclusion::OddsBelow(left, right) => {
            let (l, r) = (left.build(s)?, right.build(s)?);
            let xs = build_grid(&l, &r, grid)?;
            let v = st_by_odds(&r, &l, &xs, grid.slack);
            out.push(Observation {
                check: format!("odds({}) <= odds({})", left.symbol(), right.symbol()),
                outcome: v.status.to_string(),
                witness: v.witness,
                max_violation: Some(v.max_violation),
                agrees: v.holds(),
            });
        }
        Conclusion::All(parts) => {
            for part in parts {
                conclude(part, s, grid, stability, out, implication_violations)?;
            }
        }
        Conclusion::GeometricStability => out.push(geometric_observation(s, stability)?),
    }
    Ok(())
}

fn shape_tag(class: ShapeClass) -> &'static str {
    match class {
        ShapeClass::Ihr => "ihr",
        ShapeClass::Dhr => "dhr",
        ShapeClass::Ior => "ior",
        ShapeClass::Dor => "dor",
        ShapeClass::CdfConvex => "cdf_convex",
        ShapeClass::CdfConcave => "cdf_concave",
    }
}

fn order_observation(
    relation: Relation,
    left: LawRef,
    right: LawRef,
    s: &Scenario,
    grid: &GridSpec,
) -> Result<Observation> {
    let (l, r) = (left.build(s)?, right.build(s)?);
    let v = check_order(relation, &l, &r, grid)?;
    Ok(Observation {
        check: format!("{}({}, {})", relation, left.symbol(), right.symbol()),
        outcome: if v.equal {
            "equal".to_string()
        } else {
            v.status.to_string()
        },
        witness: v.witness,
        max_violation: Some(v.max_violation),
        agrees: v.holds(),
    })
}

/// Counts failures of the orders implied by a verified `lr`, `hr` or `rh`.
fn implied_orders(relation: Relation, left: LawRef, right: LawRef, s: &Scenario, grid: &GridSpec) -> Result<usize> {
    let implied: &[Relation] = match relation {
        Relation::LikelihoodRatio => &[Relation::HazardRate, Relation::ReversedHazard, Relation::Stochastic],
        Relation::HazardRate | Relation::ReversedHazard => &[Relation::Stochastic],
        _ => &[],
    };
    let (l, r) = (left.build(s)?, right.build(s)?);
    let mut failures = 0;
    for &rel in implied {
        if !check_order(rel, &l, &r, grid)?.holds() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Slack for the hazard sandwich, tighter than the order slack.
const SANDWICH_SLACK: f64 = 1e-10;

fn hazard_sandwich(s: &Scenario, grid: &GridSpec) -> Result<Observation> {
    let f = s.baseline;
    let g = DistortedOdds::new(f, s.params);
    let beta = s.params.beta();
    let (lo_factor, hi_factor) = (beta.min(1.0), beta.max(1.0));
    let xs = build_grid(&f, &g, grid)?;
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for &x in &xs {
        let hf = f.hazard(x);
        let hg = g.hazard(x);
        if !(hf.is_finite() && hg.is_finite()) {
            continue;
        }
        let tol = SANDWICH_SLACK * hg.max(hi_factor * hf);
        let excess = (lo_factor * hf - hg).max(hg - hi_factor * hf);
        if excess > tol && witness.is_none() {
            witness = Some(x);
        }
        worst = worst.max(excess);
    }
    Ok(Observation {
        check: "min(b,1)*h_F <= h_G <= max(b,1)*h_F".to_string(),
        outcome: if witness.is_none() { "holds" } else { "violated" }.to_string(),
        witness,
        max_violation: Some(worst),
        agrees: witness.is_none(),
    })
}

fn geometric_observation(s: &Scenario, check: &StabilityCheck) -> Result<Observation> {
    let p = s.p.ok_or_else(|| Error::Capability("scenario has no geometric parameter p".to_string()))?;
    let g = DistortedOdds::new(s.baseline, s.params);
    let min_law = g.with_params(s.params.with_beta(s.params.beta() / p)?);
    let max_law = g.with_params(s.params.with_beta(s.params.beta() * p)?);
    let sample = geometric_extremes(&g, p, check.n, check.seed)?;
    let ks_min = ks_distance(&sample.minima, |x| min_law.cdf(x))?;
    let ks_max = ks_distance(&sample.maxima, |x| max_law.cdf(x))?;
    let critical = check.critical();
    let worst = ks_min.max(ks_max);
    Ok(Observation {
        check: format!("ks(min, max) < {critical:.4}"),
        outcome: format!("ks_min={ks_min:.5} ks_max={ks_max:.5}"),
        witness: None,
        max_violation: Some(worst - critical),
        agrees: worst < critical,
    })
}
