use libm::{exp, expm1, log, log1p, pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `(α, β, θ)` parameters shared by the d-oMO and ELL families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamTriple {
    alpha: f64,
    beta: f64,
    theta: f64,
}

impl ParamTriple {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::invalid("alpha", ">= 0", alpha));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid("beta", "> 0", beta));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::invalid("theta", "> 0", theta));
        }
        Ok(ParamTriple { alpha, beta, theta })
    }

    /// `(0, β, θ)`, the odds Marshall-Olkin subfamily.
    pub fn omo(beta: f64, theta: f64) -> Result<Self> {
        Self::new(0.0, beta, theta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.alpha, beta, self.theta)
    }

    /// `α^θ`.
    pub fn alpha_pow_theta(&self) -> f64 {
        pow(self.alpha, self.theta)
    }

    /// `β((α + λ)^θ − α^θ)`: the odds of the distorted law given baseline
    /// odds `λ`; also the ELL quantile expressed in odds units.
    pub fn distort(&self, lam: f64) -> f64 {
        if lam <= 0.0 {
            return 0.0;
        }
        if lam.is_infinite() {
            return f64::INFINITY;
        }
        let (a, b, t) = (self.alpha, self.beta, self.theta);
        if a == 0.0 {
            b * pow(lam, t)
        } else {
            b * pow(a, t) * expm1(t * log1p(lam / a))
        }
    }

    /// Inverse of [`distort`](Self::distort): `(y/β + α^θ)^{1/θ} − α`.
    /// This is also the odds of the ELL law at `y`.
    pub fn undistort(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return f64::INFINITY;
        }
        let (a, b, t) = (self.alpha, self.beta, self.theta);
        if a == 0.0 {
            pow(y / b, 1.0 / t)
        } else {
            let apt = pow(a, t);
            if apt > 0.0 {
                a * expm1(log1p(y / (b * apt)) / t)
            } else {
                pow(y / b, 1.0 / t) - a
            }
        }
    }

    /// `(α + λ)^{θ−1}`, guarded at `α + λ = 0`.
    pub(crate) fn shifted_pow_theta_minus_one(&self, lam: f64) -> f64 {
        let base = self.alpha + lam;
        let e = self.theta - 1.0;
        if e == 0.0 {
            return 1.0;
        }
        if base <= 0.0 {
            return if e > 0.0 { 0.0 } else { f64::INFINITY };
        }
        exp(e * log(base))
    }

    /// `T(λ) = (α+λ)^{θ−1}(λ+1) / (1 + β((α+λ)^θ − α^θ))`, the factor with
    /// `h_G = βθ · h_F · T(Λ_F)`.
    pub fn t_factor(&self, lam: f64) -> f64 {
        let lam = lam.max(0.0);
        let p = self.shifted_pow_theta_minus_one(lam);
        if p.is_infinite() {
            return f64::INFINITY;
        }
        if lam.is_infinite() {
            // (α+λ)^{θ−1}(λ+1) / (βλ^θ) → 1/β
            return 1.0 / self.beta;
        }
        p * (lam + 1.0) / (1.0 + self.distort(lam))
    }

    /// `D(x) = β(1−α)(α+x)^θ + (βα^θ − 1)(θx + α + θ − 1)`, whose sign is the
    /// sign of `−T'(x)`.
    pub fn d_polynomial(&self, x: f64) -> f64 {
        let (a, b, t) = (self.alpha, self.beta, self.theta);
        b * (1.0 - a) * pow(a + x, t) + (b * pow(a, t) - 1.0) * (t * x + a + t - 1.0)
    }

    /// Monotonicity of `T` on `[0, ∞)`, decided from the shape of `D`
    /// (convex, concave or linear, with at most one stationary point).
    pub fn t_monotonicity(&self) -> Monotonicity {
        let (a, b, t) = (self.alpha, self.beta, self.theta);
        let curvature = (1.0 - a) * (t - 1.0);
        let d0 = self.d_polynomial(0.0);
        // candidate extremes of D on [0, ∞): x = 0, the stationary point, and ∞
        let mut lo = d0;
        let mut hi = d0;
        // D'(x) = θβ(1−α)(α+x)^{θ−1} + θ(βα^θ − 1)
        if curvature != 0.0 {
            let rhs = (1.0 - b * pow(a, t)) / (b * (1.0 - a));
            if rhs > 0.0 {
                let xs = pow(rhs, 1.0 / (t - 1.0)) - a;
                if xs > 0.0 && xs.is_finite() {
                    let v = self.d_polynomial(xs);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        let tail = self.d_tail_sign();
        if tail > 0.0 {
            hi = f64::INFINITY;
        } else if tail < 0.0 {
            lo = f64::NEG_INFINITY;
        }
        if lo >= 0.0 && hi <= 0.0 {
            Monotonicity::Constant
        } else if hi <= 0.0 {
            Monotonicity::Increasing
        } else if lo >= 0.0 {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Neither
        }
    }

    /// Sign of `lim D(x)` as `x → ∞` (0 when the limit is finite and the
    /// extreme candidates already cover it).
    fn d_tail_sign(&self) -> f64 {
        let (a, b, t) = (self.alpha, self.beta, self.theta);
        let lin = sgn(b * pow(a, t) - 1.0);
        let lead = sgn(b * (1.0 - a));
        let (first, second) = if t > 1.0 {
            (lead, lin)
        } else if t < 1.0 {
            (lin, lead)
        } else {
            // θ = 1: D(x) = (α + x)(β − 1)
            (sgn(b - 1.0), 0.0)
        };
        if first != 0.0 {
            first
        } else {
            second
        }
    }
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Monotonicity of a function on a half line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    Neither,
}

impl Monotonicity {
    pub fn is_nondecreasing(self) -> bool {
        matches!(self, Monotonicity::Increasing | Monotonicity::Constant)
    }
    pub fn is_nonincreasing(self) -> bool {
        matches!(self, Monotonicity::Decreasing | Monotonicity::Constant)
    }
}
