//! Orbits of the Gauss map `α(x) = {1/x}`.
//!
//! Three input kinds are supported: floating point (fast, loses about one
//! digit per step), exact rationals (Euclid, terminates), and quadratic
//! surds `(P + √D)/Q` (exact integer recursion, every step accurate).

use serde::{Deserialize, Serialize};

use super::fraction::ReducedFraction;
use crate::error::{Error, Result};

/// One step `k` of the orbit.
///
/// `a` is `⌊1/α_{k−1}⌋` (zero at `k = 0`), `beta` is `α₀⋯α_k` and `gamma` is
/// `β_{k−1}·log(1/α_k)`. A terminal step of a rational orbit has `alpha = 0`
/// and `gamma = +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussStep {
    pub alpha: f64,
    pub a: u64,
    pub beta: f64,
    pub gamma: f64,
}

impl GaussStep {
    pub fn is_terminal(&self) -> bool {
        self.alpha == 0.0
    }
}

/// Floating-point orbit of `x ∈ (0, 1)`.
pub fn gauss_map_orbit(x: f64, depth: usize) -> Result<Vec<GaussStep>> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain { value: x, domain: "(0, 1)" });
    }
    let mut out = Vec::with_capacity(depth);
    let mut alpha = x;
    let mut beta_prev = 1.0;
    let mut a = 0u64;
    for k in 0..depth {
        if k > 0 {
            let inv = 1.0 / alpha;
            let fl = inv.floor();
            a = fl as u64;
            alpha = inv - fl;
        }
        if alpha == 0.0 {
            out.push(GaussStep { alpha: 0.0, a, beta: 0.0, gamma: f64::INFINITY });
            break;
        }
        let beta = beta_prev * alpha;
        out.push(GaussStep { alpha, a, beta, gamma: -beta_prev * alpha.ln() });
        beta_prev = beta;
    }
    Ok(out)
}

/// Exact orbit of a rational in `(0, 1)`; it always terminates.
///
/// With Euclid remainders `ρ₀ = b, ρ₁ = r, …` one has `α_k = ρ_{k+1}/ρ_k`
/// and `β_k = ρ_{k+1}/b`.
pub fn gauss_orbit_rational(x: ReducedFraction, depth: usize) -> Result<Vec<GaussStep>> {
    let (r, b) = (x.r(), x.b());
    if r == 0 || r >= b {
        return Err(Error::Domain { value: x.to_f64(), domain: "(0, 1)" });
    }
    let bf = b as f64;
    let mut out = Vec::new();
    let (mut prev, mut cur) = (b, r);
    let mut a = 0u64;
    for k in 0..depth {
        if k > 0 {
            a = prev / cur;
            (prev, cur) = (cur, prev % cur);
        }
        if cur == 0 {
            out.push(GaussStep { alpha: 0.0, a, beta: 0.0, gamma: f64::INFINITY });
            break;
        }
        let alpha = cur as f64 / prev as f64;
        let beta_prev = prev as f64 / bf;
        out.push(GaussStep {
            alpha,
            a,
            beta: cur as f64 / bf,
            gamma: beta_prev * ((prev as f64).ln() - (cur as f64).ln()),
        });
    }
    Ok(out)
}

/// A real quadratic irrational `(P + √D)/Q` with `Q | D − P²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub p: i64,
    pub d: u64,
    pub q: i64,
}

impl QuadraticSurd {
    pub fn new(p: i64, d: u64, q: i64) -> Result<Self> {
        let s = isqrt(d);
        if s * s == d {
            return Err(crate::error::invalid("D", "must not be a perfect square"));
        }
        if q == 0 || (d as i128 - (p as i128) * (p as i128)) % q as i128 != 0 {
            return Err(crate::error::invalid("Q", "must divide D − P²"));
        }
        Ok(Self { p, d, q })
    }

    /// `(√5 − 1)/2`, the fixed point of the Gauss map with all quotients 1.
    pub fn golden() -> Self {
        Self { p: -1, d: 5, q: 2 }
    }

    /// `√2 − 1`, all quotients 2.
    pub fn silver() -> Self {
        Self { p: -1, d: 2, q: 1 }
    }

    /// Accurate floating value, avoiding cancellation in `P + √D`.
    pub fn value(&self) -> f64 {
        let sd = (self.d as f64).sqrt();
        if self.p < 0 {
            let num = self.d as i128 - (self.p as i128) * (self.p as i128);
            num as f64 / (self.q as f64 * (sd - self.p as f64))
        } else {
            (self.p as f64 + sd) / self.q as f64
        }
    }

    /// One Gauss step: returns `(a, {1/x})`.
    pub fn step(&self) -> (u64, Self) {
        let q1 = (self.d as i128 - (self.p as i128) * (self.p as i128)) / self.q as i128;
        let s = isqrt(self.d) as i128;
        let a = (s - self.p as i128).div_euclid(q1);
        let p1 = -(self.p as i128) - a * q1;
        (a as u64, Self { p: p1 as i64, d: self.d, q: q1 as i64 })
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Orbit of a quadratic surd in `(0, 1)`.
pub fn gauss_orbit_surd(x: QuadraticSurd, depth: usize) -> Result<Vec<GaussStep>> {
    let v = x.value();
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain { value: v, domain: "(0, 1)" });
    }
    let mut out = Vec::with_capacity(depth);
    let mut cur = x;
    let mut beta_prev = 1.0;
    let mut a = 0;
    for k in 0..depth {
        if k > 0 {
            let (ak, next) = cur.step();
            a = ak;
            cur = next;
        }
        let alpha = cur.value();
        let beta = beta_prev * alpha;
        out.push(GaussStep { alpha, a, beta, gamma: -beta_prev * alpha.ln() });
        beta_prev = beta;
    }
    Ok(out)
}
