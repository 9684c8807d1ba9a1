//! The series `E_a(s) = 1 + (2/ζ(−a))·Σ σ_a(n)e^{2πins}` and the period
//! function `ψ_a(s) = E_a(s) − s^{−(a+1)}E_a(−1/s)` in the upper half plane.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::{divisor_count_sieve, sigma_sieve};
use crate::numtheory::bernoulli::zeta_neg_int;

const U: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiSeriesConfig {
    /// Hard cap on the number of series terms.
    pub n_terms: usize,
    /// Imaginary offsets for boundary extrapolation, as multiples of `x`.
    pub epsilon_ladder: Vec<f64>,
    /// Polynomial degree of the extrapolation; uses `order + 1` ladder rungs.
    pub extrapolation_order: usize,
}

impl Default for PsiSeriesConfig {
    fn default() -> Self {
        Self {
            n_terms: 4_000_000,
            epsilon_ladder: vec![0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625],
            extrapolation_order: 5,
        }
    }
}

impl PsiSeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_terms < 1 {
            return Err(invalid("n_terms", "must be at least 1"));
        }
        if self.epsilon_ladder.iter().any(|&e| !(e > 0.0)) {
            return Err(invalid("epsilon_ladder", "entries must be positive"));
        }
        if self.epsilon_ladder.windows(2).any(|w| w[1] >= w[0]) {
            return Err(invalid("epsilon_ladder", "must be strictly decreasing"));
        }
        if self.extrapolation_order + 1 > self.epsilon_ladder.len() {
            return Err(invalid("extrapolation_order", "needs order + 1 ladder entries"));
        }
        Ok(())
    }
}

/// A truncated series value with separate truncation and rounding bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub truncation_bound: f64,
    pub rounding_bound: f64,
    pub terms: usize,
    /// False when the term cap was reached before the tail became negligible.
    pub converged: bool,
}

impl SeriesValue {
    pub fn error_bound(&self) -> f64 {
        self.truncation_bound + self.rounding_bound
    }
}

fn sigma_table(a: u32, n: usize) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.get(&a) {
        if t.len() > n {
            return t.clone();
        }
    }
    let limit = (n + 1).next_power_of_two().max(1024);
    let table = if a == 0 {
        divisor_count_sieve(limit).into_iter().map(f64::from).collect()
    } else {
        sigma_sieve(limit, a as f64)
    };
    let t = Arc::new(table);
    guard.insert(a, t.clone());
    t
}

/// A majorant of `σ_a(n)` whose ratio `M(n+1)/M(n)` decreases in `n`.
fn sigma_majorant(a: u32, n: f64) -> f64 {
    match a {
        0 => 2.0 * n.sqrt(),
        1 => n * (1.0 + n.ln()),
        _ => n.powi(a as i32) * (1.0 + 1.0 / (a as f64 - 1.0)),
    }
}

fn check_weight(a: u32) -> Result<f64> {
    if a >= 2 && a % 2 == 0 {
        return Err(invalid("a", format!("ζ(−{a}) = 0, so E_{a} is undefined")));
    }
    Ok(2.0 / zeta_neg_int(a as usize))
}

/// `E_a(s)` for integer `a ≥ 0` not an even number `≥ 2`, `Im s > 0`.
pub fn eisenstein_e(a: u32, s: Complex64, cfg: &PsiSeriesConfig) -> Result<SeriesValue> {
    let coef = check_weight(a)?;
    if !(s.im > 0.0) {
        return Err(Error::Domain { value: s.im, domain: "Im s > 0" });
    }
    let rho = (-2.0 * PI * s.im).exp();
    // past the peak of M(n)ρⁿ and below 1e−20 of the leading scale
    let peak = (a as f64).max(0.5) / (2.0 * PI * s.im);
    let mut n_needed = peak.ceil() as usize + 1;
    while n_needed < cfg.n_terms {
        let m = sigma_majorant(a, n_needed as f64) * rho.powf(n_needed as f64);
        if m < 1e-20 && n_needed as f64 > 2.0 * peak {
            break;
        }
        n_needed = (n_needed as f64 * 1.25).ceil() as usize + 1;
    }
    let n = n_needed.min(cfg.n_terms);
    let sigma = sigma_table(a, n);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut abs_weighted = 0.0;
    let two_pi_i_s = Complex64::new(0.0, 2.0 * PI) * s;
    let s_norm = s.norm();
    for k in 1..=n {
        let term = sigma[k] * (two_pi_i_s * k as f64).exp();
        // Kahan-style compensation on both components
        let t = acc + term;
        comp += (acc - t) + term;
        acc = t;
        abs_weighted += term.norm() * (8.0 + 2.0 * PI * k as f64 * s_norm);
    }
    let sum = acc + comp;
    let next = (n + 1) as f64;
    let ratio = sigma_majorant(a, next + 1.0) / sigma_majorant(a, next) * rho;
    let first = sigma_majorant(a, next) * rho.powf(next);
    let tail = if ratio < 1.0 { first / (1.0 - ratio) } else { f64::INFINITY };
    Ok(SeriesValue {
        value: 1.0 + coef * sum,
        truncation_bound: coef.abs() * tail,
        rounding_bound: coef.abs() * U * abs_weighted + 4.0 * U * (coef * sum).norm(),
        terms: n,
        converged: n_needed <= cfg.n_terms,
    })
}

/// `ψ_a(s) = E_a(s) − s^{−(a+1)}E_a(−1/s)`.
pub fn psi(a: u32, s: Complex64, cfg: &PsiSeriesConfig) -> Result<SeriesValue> {
    let e1 = eisenstein_e(a, s, cfg)?;
    let t = -s.inv();
    let e2 = eisenstein_e(a, t, cfg)?;
    let w = s.powi(-(a as i32 + 1));
    let value = e1.value - w * e2.value;
    let wn = w.norm();
    Ok(SeriesValue {
        value,
        truncation_bound: e1.truncation_bound + wn * e2.truncation_bound,
        rounding_bound: e1.rounding_bound
            + wn * e2.rounding_bound
            + 4.0 * U * (e1.value.norm() + wn * e2.value.norm()) * (a as f64 + 2.0),
        terms: e1.terms + e2.terms,
        converged: e1.converged && e2.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn config_validation() {
        let cfg = PsiSeriesConfig::default();
        assert!(cfg.validate().is_ok());
        let bad = PsiSeriesConfig { epsilon_ladder: vec![0.1, 0.2], ..cfg.clone() };
        assert!(bad.validate().is_err());
        let bad = PsiSeriesConfig { extrapolation_order: 9, ..cfg };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn large_height_limit_and_symmetry() {
        let cfg = PsiSeriesConfig::default();
        for a in [0u32, 1, 3, 5] {
            let e = eisenstein_e(a, c(0.3, 8.0), &cfg).unwrap();
            assert!((e.value - 1.0).norm() < 1e-15 * 600.0);
        }
        let e = eisenstein_e(1, c(0.0, 1.0), &cfg).unwrap();
        assert!(e.value.im.abs() < 1e-15);
        assert!(eisenstein_e(4, c(0.0, 1.0), &cfg).is_err());
        assert!(eisenstein_e(1, c(0.0, -1.0), &cfg).is_err());
    }

    #[test]
    fn divisor_series_respects_termwise_bound() {
        let cfg = PsiSeriesConfig::default();
        let e = eisenstein_e(0, c(0.1, 0.5), &cfg).unwrap();
        // E₀ = 1 − 4·𝒮₀, so |𝒮₀| = |E₀ − 1|/4
        let s0 = (e.value - 1.0).norm() / 4.0;
        let bound: f64 = divisor_count_sieve(200)
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &d)| d as f64 * (-PI * n as f64).exp())
            .sum();
        assert!(s0 <= bound);
    }

    #[test]
    fn modular_weights_vanish() {
        let cfg = PsiSeriesConfig::default();
        let mut points = vec![c(0.3, 0.7), c(0.0, 0.7), c(0.0, 1.3)];
        for &x in &[-0.45, -0.1, 0.2, 0.4] {
            for &y in &[0.6, 0.9, 1.4, 2.0] {
                points.push(c(x, y));
            }
        }
        for a in [3u32, 5, 7] {
            for &s in &points {
                let p = psi(a, s, &cfg).unwrap();
                assert!(p.converged);
                assert!(p.value.norm() <= p.error_bound(), "a={a} s={s}: {}", p.value.norm());
                assert!(p.value.norm() < 1e-8);
            }
        }
        // weight 2 is only quasi-modular
        assert!(psi(1, c(0.3, 0.7), &cfg).unwrap().value.norm() > 1e-3);
    }

    #[test]
    fn fixed_point_identity() {
        let cfg = PsiSeriesConfig::default();
        let i = c(0.0, 1.0);
        for a in [0u32, 1, 3, 5] {
            let p = psi(a, i, &cfg).unwrap();
            let e = eisenstein_e(a, i, &cfg).unwrap().value;
            let want = e * (1.0 - i.powi(-(a as i32 + 1)));
            assert!((p.value - want).norm() < 1e-12 * (1.0 + want.norm()));
        }
    }
}
