use serde::{Deserialize, Serialize};

use super::g::g_periodic;
use crate::error::{invalid, Result};
use crate::log_two_pi_minus_gamma;
use crate::quad::gauss_legendre;
use crate::summation::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ALambdaConfig {
    /// Integration is carried out exactly on `[0, horizon]`; the rest is the tail.
    pub horizon: f64,
    /// Below this point segments use the closed-form antiderivative.
    pub exact_below: f64,
    /// Gauss–Legendre nodes per segment above `exact_below`.
    pub nodes: usize,
}

impl Default for ALambdaConfig {
    fn default() -> Self {
        Self { horizon: 1e6, exact_below: 1e3, nodes: 4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ALambda {
    pub lambda: f64,
    pub value: f64,
    /// Covers the tail, which lies in `[0, 1/T]`.
    pub error_bound: f64,
    pub segments: u64,
}

/// `A(λ) = ∫₀^∞ {t}{λt} dt/t²`.
///
/// The range `[0, T]` is cut at every `k` and `j/λ`; on each piece the
/// integrand is `(t − k)(λt − j)/t²`. The tail beyond `T` is estimated as
/// `m/T`, with `m` the mean of `{t}{λt}` over `[T/2, T]`.
pub fn a_lambda(lambda: f64, cfg: &ALambdaConfig) -> Result<ALambda> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", "must be positive"));
    }
    if !(cfg.horizon >= 4.0 && cfg.nodes >= 2) {
        return Err(invalid("cfg", "horizon ≥ 4 and nodes ≥ 2 required"));
    }
    let (xs, ws) = gauss_legendre(cfg.nodes);
    let t_max = cfg.horizon;
    let half = t_max / 2.0;
    let mut acc = Neumaier::new();
    let mut upper = Neumaier::new();
    let (mut k, mut j) = (0u64, 0u64);
    let mut t1 = 0.0f64;
    let mut segments = 0u64;
    while t1 < t_max {
        let next_int = (k + 1) as f64;
        let next_frac = (j + 1) as f64 / lambda;
        let t2 = next_int.min(next_frac).min(t_max);
        let (kf, jf) = (k as f64, j as f64);
        let piece = if t2 <= cfg.exact_below {
            if k == 0 && j == 0 {
                lambda * (t2 - t1)
            } else {
                lambda * (t2 - t1) - (jf + lambda * kf) * (t2 / t1).ln() + kf * jf * (1.0 / t1 - 1.0 / t2)
            }
        } else {
            let (mid, rad) = (0.5 * (t1 + t2), 0.5 * (t2 - t1));
            let mut s = 0.0;
            for (x, w) in xs.iter().zip(&ws) {
                let t = mid + rad * x;
                s += w * (t - kf) * (lambda * t - jf) / (t * t);
            }
            s * rad
        };
        acc.add(piece);
        if t1 >= half {
            // ∫ {t}{λt} dt on the piece, for the tail mean
            let (a, b) = (t1 - kf, t2 - kf);
            let (c, d) = (lambda * t1 - jf, lambda * t2 - jf);
            let len = t2 - t1;
            upper.add(len * (a * c + (a * (d - c) + c * (b - a)) / 2.0 + (b - a) * (d - c) / 3.0));
        }
        if t2 == next_int {
            k += 1;
        }
        if t2 == next_frac {
            j += 1;
        }
        t1 = t2;
        segments += 1;
    }
    let mean = upper.value() / (t_max - half);
    Ok(ALambda {
        lambda,
        value: acc.value() + mean / t_max,
        error_bound: 1.0 / t_max + 64.0 * f64::EPSILON * segments as f64 / t_max,
        segments,
    })
}

/// `Σ_{k ≥ N} k^{−m}` for large `N` by Euler–Maclaurin.
fn power_tail(m: i32, n: f64) -> f64 {
    let mf = m as f64;
    n.powf(1.0 - mf) / (mf - 1.0) + 0.5 * n.powi(-m) + mf / 12.0 * n.powi(-m - 1)
        - mf * (mf + 1.0) * (mf + 2.0) / 720.0 * n.powi(-m - 3)
}

/// `A(1) = 1 + Σ_{k≥1} (1 − 2k·log(1 + 1/k) + k/(k + 1))`, summed directly to
/// `k = 1000` and by the expansion `Σ_m (−1)^m (m − 1)/(m + 1)·k^{−m}` beyond.
pub fn a_one() -> f64 {
    const K: u64 = 1000;
    let mut acc = Neumaier::new();
    acc.add(1.0);
    for k in 1..=K {
        let kf = k as f64;
        acc.add(1.0 - 2.0 * kf * (1.0 / kf).ln_1p() + kf / (kf + 1.0));
    }
    let n = (K + 1) as f64;
    for m in 2..10 {
        let c = (m as f64 - 1.0) / (m as f64 + 1.0) * if m % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(c * power_tail(m, n));
    }
    acc.value()
}

/// Both sides of the reciprocity identity for `A(λ)` at an irrational `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ALambdaIdentity {
    pub lambda: f64,
    pub a: f64,
    /// `g({λ})` and `g({1/λ})` from the block series.
    pub g_lambda: f64,
    pub g_inverse: f64,
    /// `(1 − λ)/2·log λ + (λ + 1)/2·(log 2π − γ) + (g(λ) + λg(1/λ))/2`.
    pub rhs: f64,
    /// The same with `−g(λ) − λg(1/λ)` in place of the last term.
    pub rhs_unit_weight: f64,
    pub defect: f64,
    pub tolerance: f64,
}

pub fn a_lambda_identity(lambda: f64, cfg: &ALambdaConfig, terms: u64) -> Result<ALambdaIdentity> {
    let a = a_lambda(lambda, cfg)?;
    let gl = g_periodic(lambda, terms)?;
    let gi = g_periodic(1.0 / lambda, terms)?;
    let base = (1.0 - lambda) / 2.0 * lambda.ln() + (lambda + 1.0) / 2.0 * log_two_pi_minus_gamma();
    let pair = gl.value + lambda * gi.value;
    let rhs = base + 0.5 * pair;
    Ok(ALambdaIdentity {
        lambda,
        a: a.value,
        g_lambda: gl.value,
        g_inverse: gi.value,
        rhs,
        rhs_unit_weight: base - pair,
        defect: (a.value - rhs).abs(),
        tolerance: a.error_bound + 0.5 * (gl.error_bound + lambda * gi.error_bound),
    })
}
