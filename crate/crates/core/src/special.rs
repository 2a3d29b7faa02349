//! Special functions and scalar root finding.

use libm::{exp, fabs, lgamma, log};

const GAMMA_EPS: f64 = 1e-16;
const GAMMA_MAX_ITER: usize = 1000;
const TINY: f64 = 1e-300;

/// Regularized incomplete gamma pair `(P(a, x), Q(a, x))`.
///
/// Uses the power series below `a + 1` and a modified Lentz continued
/// fraction above it; the complementary value is formed by subtraction
/// only on the side where it is at least one half.
pub fn regularized_gamma(a: f64, x: f64) -> (f64, f64) {
    debug_assert!(a > 0.0);
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    // log of x^a e^{-x} / Gamma(a)
    let log_prefactor = a * log(x) - x - lgamma(a);
    if x < a + 1.0 {
        let p = lower_series(a, x, log_prefactor);
        (p, 1.0 - p)
    } else {
        let q = upper_continued_fraction(a, x, log_prefactor);
        (1.0 - q, q)
    }
}

/// P(a, x) = γ(a, x) / Γ(a).
pub fn gamma_p(a: f64, x: f64) -> f64 {
    regularized_gamma(a, x).0
}

/// Q(a, x) = 1 − P(a, x), computed without cancellation in the upper tail.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    regularized_gamma(a, x).1
}

fn lower_series(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if fabs(term) < fabs(sum) * GAMMA_EPS {
            break;
        }
    }
    (sum * exp(log_prefactor)).min(1.0)
}

fn upper_continued_fraction(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if fabs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if fabs(delta - 1.0) < GAMMA_EPS {
            break;
        }
    }
    (exp(log_prefactor) * h).clamp(0.0, 1.0)
}

/// Solve `g(x) = 0` for a nondecreasing `g` on `[lo, ∞)` with `g(lo) ≤ 0`.
///
/// `g` returns `(value, derivative)`. The bracket is grown geometrically
/// from `guess`, then refined with Newton steps that fall back to bisection
/// whenever a step leaves the bracket. Stops at `rtol` relative width.
pub fn solve_increasing<G>(g: G, lo: f64, guess: f64, rtol: f64) -> f64
where
    G: Fn(f64) -> (f64, f64),
{
    let mut lo = lo;
    let mut hi = if guess > lo { guess } else { lo + 1.0 };
    let mut steps = 0;
    loop {
        let (v, _) = g(hi);
        if v >= 0.0 {
            break;
        }
        lo = hi;
        hi = if hi > 0.0 { hi * 2.0 } else { 1.0 };
        steps += 1;
        if steps > 2100 || !hi.is_finite() {
            return f64::INFINITY;
        }
    }

    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..400 {
        let (v, dv) = g(x);
        if v == 0.0 {
            return x;
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = if dv > 0.0 && dv.is_finite() { x - v / dv } else { f64::NAN };
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = fabs(next - x);
        x = next;
        if step <= rtol * fabs(x) || hi - lo <= rtol * fabs(hi) || step == 0.0 {
            return x;
        }
    }
    x
}
