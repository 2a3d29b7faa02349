//! Grid-based checkers for stochastic orders and shape classes.
//!
//! Every check evaluates the defining inequality or monotonicity condition
//! on a finite grid of abscissas. A "holds" verdict means no violation was
//! found at that resolution; a "crosses" verdict always carries a witness.
//! Conventions, for `d1` compared with `d2`:
//!
//! | relation | `d1 ≤ d2` when |
//! |---|---|
//! | `st` | `F̄1 ≤ F̄2` everywhere (equivalently `Λ1 ≥ Λ2`) |
//! | `hr` | `h1 ≥ h2` everywhere |
//! | `rh` | `h̃1 ≤ h̃2` everywhere (`F2/F1` nondecreasing) |
//! | `lr` | `f2/f1` nondecreasing |
//! | `c` | `F2⁻¹ ∘ F1` convex |
//! | `disp` | `F2⁻¹ ∘ F1(x) − x` nondecreasing |

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::{exp, fabs, log};
use serde::{Deserialize, Serialize};

use crate::dist::ContinuousDistribution;
use crate::error::{Error, Result};

/// Rounding floor for values obtained through a quantile inversion.
const TRANSPORT_NOISE: f64 = 1e-12;
/// Densities below this are skipped in likelihood-ratio checks.
const DENSITY_FLOOR: f64 = 1e-300;

/// How the probability levels of a grid are spaced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "spacing", rename_all = "snake_case")]
pub enum Levels {
    /// Evenly spaced probabilities in `[lo, hi]`.
    Probability { lo: f64, hi: f64 },
    /// Evenly spaced log-odds `ln(p / (1 − p))` in `[lo, hi]`; reaches far
    /// tails that probability spacing cannot represent.
    LogOdds { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub count: usize,
    pub levels: Levels,
    /// Relative tolerance for inequality and monotonicity tests.
    pub slack: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            count: 2049,
            levels: Levels::Probability {
                lo: 1e-4,
                hi: 1.0 - 1e-4,
            },
            slack: 1e-9,
        }
    }
}

impl GridSpec {
    pub fn new(count: usize, p_lo: f64, p_hi: f64, slack: f64) -> Result<Self> {
        let spec = GridSpec {
            count,
            levels: Levels::Probability { lo: p_lo, hi: p_hi },
            slack,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn log_odds(count: usize, lo: f64, hi: f64, slack: f64) -> Result<Self> {
        let spec = GridSpec {
            count,
            levels: Levels::LogOdds { lo, hi },
            slack,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 16 {
            return Err(Error::invalid("count", ">= 16", self.count as f64));
        }
        if !(self.slack >= 0.0) {
            return Err(Error::invalid("slack", ">= 0", self.slack));
        }
        match self.levels {
            Levels::Probability { lo, hi } => {
                if !(lo > 0.0) {
                    return Err(Error::invalid("p_lo", "> 0", lo));
                }
                if !(hi < 1.0) {
                    return Err(Error::invalid("p_hi", "< 1", hi));
                }
                if !(lo < hi) {
                    return Err(Error::invalid("p_lo", "< p_hi", lo));
                }
            }
            Levels::LogOdds { lo, hi } => {
                if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                    return Err(Error::invalid("log-odds range", "finite with lo < hi", lo));
                }
            }
        }
        Ok(())
    }

    /// Abscissas of `d` at the grid's probability levels.
    pub fn abscissas<D: ContinuousDistribution + ?Sized>(&self, d: &D) -> Result<Vec<f64>> {
        self.validate()?;
        if !d.capabilities().quantile {
            return Err(Error::Capability(format!("{d:?} has no quantile function")));
        }
        let n = self.count;
        let mut xs = Vec::with_capacity(n);
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            let x = match self.levels {
                Levels::Probability { lo, hi } => {
                    let p = lo + (hi - lo) * t;
                    if p <= 0.5 {
                        d.quantile(p)?
                    } else {
                        d.isf(1.0 - p)?
                    }
                }
                Levels::LogOdds { lo, hi } => {
                    let l = lo + (hi - lo) * t;
                    if l <= 0.0 {
                        d.quantile(1.0 / (1.0 + exp(-l)))?
                    } else {
                        d.isf(1.0 / (1.0 + exp(l)))?
                    }
                }
            };
            if x.is_finite() && x > 0.0 {
                xs.push(x);
            }
        }
        Ok(xs)
    }
}

/// Union of both quantile images of the grid's probability levels, sorted and
/// deduplicated within 1e-12 relative.
pub fn build_grid(
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    spec: &GridSpec,
) -> Result<Vec<f64>> {
    let mut xs = spec.abscissas(d1)?;
    xs.extend(spec.abscissas(d2)?);
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut out: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        match out.last() {
            Some(&prev) if fabs(x - prev) <= 1e-12 * fabs(x).max(fabs(prev)) => {}
            _ => out.push(x),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "st")]
    Stochastic,
    #[serde(rename = "hr")]
    HazardRate,
    #[serde(rename = "rh")]
    ReversedHazard,
    #[serde(rename = "lr")]
    LikelihoodRatio,
    #[serde(rename = "c")]
    ConvexTransform,
    #[serde(rename = "disp")]
    Dispersive,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Stochastic,
        Relation::HazardRate,
        Relation::ReversedHazard,
        Relation::LikelihoodRatio,
        Relation::ConvexTransform,
        Relation::Dispersive,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Relation::Stochastic => "st",
            Relation::HazardRate => "hr",
            Relation::ReversedHazard => "rh",
            Relation::LikelihoodRatio => "lr",
            Relation::ConvexTransform => "c",
            Relation::Dispersive => "disp",
        }
    }

    fn needs_density(self) -> bool {
        matches!(
            self,
            Relation::HazardRate | Relation::ReversedHazard | Relation::LikelihoodRatio
        )
    }

    fn needs_quantile(self) -> bool {
        matches!(self, Relation::ConvexTransform | Relation::Dispersive)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| Error::UnknownFamily(format!("relation `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStatus {
    Holds,
    Reversed,
    Crosses,
    Inconclusive,
}

impl fmt::Display for OrderStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderStatus::Holds => "holds",
            OrderStatus::Reversed => "reversed",
            OrderStatus::Crosses => "crosses",
            OrderStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub status: OrderStatus,
    /// No difference beyond slack anywhere: the order holds both ways.
    pub equal: bool,
    /// Abscissa of the first sign change when `status` is `Crosses`.
    pub witness: Option<f64>,
    /// Largest amount by which the `d1 ≤ d2` condition is violated
    /// (non-positive when it is never violated).
    pub max_violation: f64,
    /// Grid points (or consecutive pairs) that entered the test.
    pub points: usize,
    /// For `st`, the verdict reached independently from the odds functions.
    pub odds_cross_check: Option<OrderStatus>,
}

impl OrderVerdict {
    /// `d1 ≤ d2` holds on the grid (including equality).
    pub fn holds(&self) -> bool {
        self.status == OrderStatus::Holds
    }

    /// `d2 ≤ d1` holds on the grid (including equality).
    pub fn reversed(&self) -> bool {
        self.status == OrderStatus::Reversed || self.equal
    }
}

/// Running classification of signed differences `d` (positive when the
/// `d1 ≤ d2` condition is satisfied) against per-point tolerances.
#[derive(Debug, Default)]
struct Tally {
    first_sign: Option<bool>,
    any_pos: bool,
    any_neg: bool,
    witness: Option<f64>,
    max_violation: f64,
    valid: usize,
    invalid: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            max_violation: f64::NEG_INFINITY,
            ..Default::default()
        }
    }

    fn push(&mut self, x: f64, d: f64, tol: f64) {
        if d.is_nan() || tol.is_nan() {
            self.invalid += 1;
            return;
        }
        self.valid += 1;
        if -d > self.max_violation {
            self.max_violation = -d;
        }
        let sign = if d > tol {
            Some(true)
        } else if d < -tol {
            Some(false)
        } else {
            None
        };
        if let Some(s) = sign {
            if s {
                self.any_pos = true;
            } else {
                self.any_neg = true;
            }
            match self.first_sign {
                None => self.first_sign = Some(s),
                Some(f) if f != s && self.witness.is_none() => self.witness = Some(x),
                _ => {}
            }
        }
    }

    fn verdict(self, relation: Relation) -> OrderVerdict {
        let status = if self.valid < 2 || self.invalid > self.valid {
            OrderStatus::Inconclusive
        } else if !self.any_neg {
            OrderStatus::Holds
        } else if !self.any_pos {
            OrderStatus::Reversed
        } else {
            OrderStatus::Crosses
        };
        OrderVerdict {
            relation,
            status,
            equal: status == OrderStatus::Holds && !self.any_pos,
            witness: if status == OrderStatus::Crosses {
                self.witness
            } else {
                None
            },
            max_violation: if self.valid == 0 { 0.0 } else { self.max_violation },
            points: self.valid,
            odds_cross_check: None,
        }
    }
}

fn rel_tol(slack: f64, a: f64, b: f64) -> f64 {
    slack * fabs(a).max(fabs(b))
}

/// Checks `d1 ≤ d2` for `relation` on the union grid built from `spec`.
pub fn check_order(
    relation: Relation,
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    spec: &GridSpec,
) -> Result<OrderVerdict> {
    check_capabilities(relation, d1, d2)?;
    let grid = build_grid(d1, d2, spec)?;
    check_order_on(relation, d1, d2, &grid, spec.slack)
}

fn check_capabilities(
    relation: Relation,
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
) -> Result<()> {
    for d in [d1, d2] {
        let caps = d.capabilities();
        if relation.needs_density() && !caps.density {
            return Err(Error::Capability(format!(
                "`{relation}` needs a density; {d:?} has none"
            )));
        }
        if relation.needs_quantile() && !caps.quantile {
            return Err(Error::Capability(format!(
                "`{relation}` needs a quantile function; {d:?} has none"
            )));
        }
    }
    Ok(())
}

/// Checks `d1 ≤ d2` for `relation` at the given abscissas.
pub fn check_order_on(
    relation: Relation,
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    grid: &[f64],
    slack: f64,
) -> Result<OrderVerdict> {
    check_capabilities(relation, d1, d2)?;
    let verdict = match relation {
        Relation::Stochastic => {
            let mut v = st_by_tails(d1, d2, grid, slack);
            v.odds_cross_check = Some(st_by_odds(d1, d2, grid, slack).status);
            v
        }
        Relation::HazardRate => pointwise(relation, grid, |x| {
            let (a, b) = (d1.hazard(x), d2.hazard(x));
            comparable(a, b).then(|| (a - b, rel_tol(slack, a, b)))
        }),
        Relation::ReversedHazard => pointwise(relation, grid, |x| {
            let (a, b) = (d1.reversed_hazard(x), d2.reversed_hazard(x));
            comparable(a, b).then(|| (b - a, rel_tol(slack, a, b)))
        }),
        Relation::LikelihoodRatio => {
            let series: Vec<(f64, f64, f64)> = grid
                .iter()
                .filter_map(|&x| {
                    let (f1, f2) = (d1.pdf(x), d2.pdf(x));
                    (f1 > DENSITY_FLOOR && f2 > DENSITY_FLOOR && f1.is_finite() && f2.is_finite())
                        .then(|| {
                            let (l1, l2) = (log(f1), log(f2));
                            (x, l2 - l1, 1.0 + fabs(l1) + fabs(l2))
                        })
                })
                .collect();
            let mut tally = Tally::new();
            for w in series.windows(2) {
                let tol = slack * w[0].2.max(w[1].2);
                tally.push(w[1].0, w[1].1 - w[0].1, tol);
            }
            tally.verdict(relation)
        }
        Relation::ConvexTransform => {
            let phi = transport_series(d1, d2, grid)?;
            let mut tally = Tally::new();
            for w in phi.windows(3) {
                let (x0, p0) = w[0];
                let (x1, p1) = w[1];
                let (x2, p2) = w[2];
                let (h0, h1) = (x1 - x0, x2 - x1);
                let s0 = (p1 - p0) / h0;
                let s1 = (p2 - p1) / h1;
                let noise = TRANSPORT_NOISE
                    * ((fabs(p0) + fabs(p1)) / h0 + (fabs(p1) + fabs(p2)) / h1);
                tally.push(x1, s1 - s0, rel_tol(slack, s0, s1) + noise);
            }
            tally.verdict(relation)
        }
        Relation::Dispersive => {
            let phi = transport_series(d1, d2, grid)?;
            let mut tally = Tally::new();
            for w in phi.windows(2) {
                let (x0, p0) = w[0];
                let (x1, p1) = w[1];
                let (g0, g1) = (p0 - x0, p1 - x1);
                let noise = TRANSPORT_NOISE * (fabs(p0) + fabs(p1) + x0 + x1);
                tally.push(x1, g1 - g0, rel_tol(slack, g0, g1) + noise);
            }
            tally.verdict(relation)
        }
    };
    Ok(verdict)
}

fn comparable(a: f64, b: f64) -> bool {
    !(a.is_nan() || b.is_nan() || (a.is_infinite() && b.is_infinite()))
}

fn pointwise<F>(relation: Relation, grid: &[f64], mut diff: F) -> OrderVerdict
where
    F: FnMut(f64) -> Option<(f64, f64)>,
{
    let mut tally = Tally::new();
    for &x in grid {
        match diff(x) {
            Some((d, tol)) => tally.push(x, d, if tol.is_finite() { tol } else { 0.0 }),
            None => tally.invalid += 1,
        }
    }
    tally.verdict(relation)
}

/// `d1 ≤st d2` from tail probabilities, comparing CDFs in the lower half and
/// survivals in the upper half so both tails keep relative precision.
fn st_by_tails(
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    grid: &[f64],
    slack: f64,
) -> OrderVerdict {
    pointwise(Relation::Stochastic, grid, |x| {
        let (c1, c2) = (d1.cdf(x), d2.cdf(x));
        if c1 <= 0.5 && c2 <= 0.5 {
            Some((c1 - c2, rel_tol(slack, c1, c2)))
        } else {
            let (s1, s2) = (d1.sf(x), d2.sf(x));
            Some((s2 - s1, rel_tol(slack, s1, s2)))
        }
    })
}

/// `d1 ≤st d2` from the odds functions: `Λ1 ≥ Λ2` everywhere.
pub fn st_by_odds(
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    grid: &[f64],
    slack: f64,
) -> OrderVerdict {
    pointwise(Relation::Stochastic, grid, |x| {
        let (a, b) = (d1.odds(x), d2.odds(x));
        comparable(a, b).then(|| (a - b, rel_tol(slack, a, b)))
    })
}

/// `(x, d2⁻¹(d1(x)))` for every grid point where the transport is finite.
fn transport_series(
    d1: &dyn ContinuousDistribution,
    d2: &dyn ContinuousDistribution,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(grid.len());
    for &x in grid {
        let c = d1.cdf(x);
        if c <= 0.0 || d1.sf(x) <= 0.0 {
            continue;
        }
        let y = d1.transport_to(d2, x)?;
        if y.is_finite() {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Shape classes of a single law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Ihr,
    Dhr,
    Ior,
    Dor,
    CdfConvex,
    CdfConcave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub ihr: bool,
    pub dhr: bool,
    pub ior: bool,
    pub dor: bool,
    pub cdf_convex: bool,
    pub cdf_concave: bool,
    pub constant_hazard: bool,
    pub constant_odds_rate: bool,
}

impl ShapeReport {
    pub fn has(&self, class: ShapeClass) -> bool {
        match class {
            ShapeClass::Ihr => self.ihr,
            ShapeClass::Dhr => self.dhr,
            ShapeClass::Ior => self.ior,
            ShapeClass::Dor => self.dor,
            ShapeClass::CdfConvex => self.cdf_convex,
            ShapeClass::CdfConcave => self.cdf_concave,
        }
    }
}

/// Monotonicity of a sampled function: `(nondecreasing, nonincreasing)`
/// within relative slack. Non-finite samples are skipped.
pub fn monotone_flags(values: &[(f64, f64)], slack: f64) -> (bool, bool) {
    let finite: Vec<&(f64, f64)> = values.iter().filter(|v| v.1.is_finite()).collect();
    let mut up = true;
    let mut down = true;
    for w in finite.windows(2) {
        let (a, b) = (w[0].1, w[1].1);
        let tol = rel_tol(slack, a, b);
        if b - a < -tol {
            up = false;
        }
        if b - a > tol {
            down = false;
        }
    }
    (up, down)
}

/// Hazard, odds-rate and CDF-curvature classes of `d` on its own quantile grid.
pub fn classify_shape(d: &dyn ContinuousDistribution, spec: &GridSpec) -> Result<ShapeReport> {
    if !d.capabilities().density {
        return Err(Error::Capability(format!("shape classification needs a density; {d:?} has none")));
    }
    let grid = spec.abscissas(d)?;
    Ok(classify_shape_on(d, &grid, spec.slack))
}

pub fn classify_shape_on(d: &dyn ContinuousDistribution, grid: &[f64], slack: f64) -> ShapeReport {
    let hazard: Vec<(f64, f64)> = grid.iter().map(|&x| (x, d.hazard(x))).collect();
    let rate: Vec<(f64, f64)> = grid.iter().map(|&x| (x, d.odds_rate(x))).collect();
    let (ihr, dhr) = monotone_flags(&hazard, slack);
    let (ior, dor) = monotone_flags(&rate, slack);

    // CDF slopes between consecutive grid points
    let cdf: Vec<(f64, f64)> = grid.iter().map(|&x| (x, d.cdf(x))).collect();
    let slopes: Vec<(f64, f64)> = cdf
        .windows(2)
        .map(|w| (w[1].0, (w[1].1 - w[0].1) / (w[1].0 - w[0].0)))
        .collect();
    let (cdf_convex, cdf_concave) = monotone_flags(&slopes, slack);

    ShapeReport {
        ihr,
        dhr,
        ior,
        dor,
        cdf_convex,
        cdf_concave,
        constant_hazard: ihr && dhr,
        constant_odds_rate: ior && dor,
    }
}
