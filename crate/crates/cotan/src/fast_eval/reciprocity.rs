use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eisenstein::{psi, PsiSeriesConfig};
use crate::cotangent::c0_naive;
use crate::error::{Error, Result};
use crate::numtheory::fraction::ReducedFraction;

const U: f64 = f64::EPSILON / 2.0;

/// `c₀(r/b) + (b/r)·c₀(b/r) − 1/(πr)`, from the naive sums.
///
/// `c₀` of an integer is the empty sum. The result equals `(i/2)ψ₀(r/b)`.
pub fn reciprocity_defect(x: ReducedFraction) -> Result<f64> {
    let (r, b) = (x.r(), x.b());
    if r == 0 {
        return Err(Error::Domain { value: 0.0, domain: "r ≥ 1" });
    }
    let c0_int = |num: u64, den: u64| -> Result<f64> {
        if den < 2 || num % den == 0 {
            Ok(0.0)
        } else {
            Ok(c0_naive(ReducedFraction::coprime(num % den, den)?)?.value)
        }
    };
    Ok(c0_int(r, b)? + b as f64 / r as f64 * c0_int(b, r)? - 1.0 / (PI * r as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Psi0Estimate {
    pub x: f64,
    pub value: Complex64,
    pub error_bound: f64,
    /// False when successive extrapolation orders stopped contracting.
    pub stable: bool,
    /// `(ε, ψ₀(x + iε))` on the ladder.
    pub samples: Vec<(f64, Complex64)>,
}

/// `ψ₀(x)` on the real axis by polynomial extrapolation of `ψ₀(x + iε)`
/// to `ε = 0` along `ε_j = x·ladder_j`.
pub fn psi0_boundary(x: f64, cfg: &PsiSeriesConfig) -> Result<Psi0Estimate> {
    cfg.validate()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain { value: x, domain: "x > 0" });
    }
    let n = cfg.extrapolation_order + 1;
    let mut eps = Vec::with_capacity(n);
    let mut vals = Vec::with_capacity(n);
    let mut noise: f64 = 0.0;
    for &c in cfg.epsilon_ladder.iter().take(n) {
        let e = x * c;
        let p = psi(0, Complex64::new(x, e), cfg)?;
        if !p.converged {
            return Err(Error::NotConverged(format!("ψ₀ series at ε = {e:e} hit the term cap")));
        }
        noise = noise.max(p.error_bound());
        eps.push(e);
        vals.push(p.value);
    }
    let diagonal = neville_at_zero(&eps, &vals);
    let value = diagonal[n - 1];
    let corrections: Vec<f64> = diagonal.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let last = *corrections.last().unwrap_or(&f64::INFINITY);
    let stable = corrections.len() < 2 || corrections.windows(2).rev().take(2).all(|w| w[1] < w[0]);
    let lebesgue: f64 = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&m| m != j)
                .map(|m| (eps[m] / (eps[m] - eps[j])).abs())
                .product::<f64>()
        })
        .sum();
    Ok(Psi0Estimate {
        x,
        value,
        error_bound: 2.0 * last + lebesgue * noise + 8.0 * U * value.norm(),
        stable,
        samples: eps.into_iter().zip(vals).collect(),
    })
}

/// Neville's scheme evaluated at 0; entry `m` uses the first `m + 1` points.
fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut diag = vec![p[0]];
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i + 1] * xs[i] - p[i] * xs[i + m]) / (xs[i] - xs[i + m]);
        }
        diag.push(p[0]);
    }
    diag
}
