//! The Estermann function `E(s, r/b, α) = Σ σ_α(n)·e(nr/b)·n^{−s}` in its
//! half-plane of absolute convergence, and its closed forms at `s = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cotangent::{c0_naive, cot_pi_frac};
use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::{mul_mod, primes_up_to, sigma_sieve};
use crate::numtheory::bernoulli::bernoulli_f64;
use crate::numtheory::fraction::{coprime_residues, ReducedFraction};
use crate::summation::Neumaier;

const MARGIN: f64 = 0.1;
const MAX_ALPHA: u32 = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstermannPoint {
    pub s: Complex64,
    pub x: ReducedFraction,
    pub alpha: u32,
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `log C_ε` with `d(n) ≤ C_ε·n^ε` for all `n`, from
/// `C_ε = Π_{p < 2^{1/ε}} max_k (k+1)/p^{kε}`.
fn log_divisor_constant(eps: f64) -> f64 {
    let limit = 2f64.powf(1.0 / eps).ceil() as usize;
    let mut total = 0.0;
    for p in primes_up_to(limit) {
        let lp = (p as f64).ln();
        let mut best: f64 = 0.0;
        let mut k = 1.0;
        loop {
            let v = (k + 1.0f64).ln() - k * eps * lp;
            if v < best && k > 1.0 {
                break;
            }
            best = best.max(v);
            k += 1.0;
        }
        total += best;
    }
    total
}

/// `Σ_{n>N} σ_α(n)·n^{−σ}` bounded through `σ_α(n) ≤ n^α d(n) ≤ C_ε n^{α+ε}`
/// and the integral test, minimised over a grid of `ε`.
fn tail_bound(sigma: f64, alpha: u32, n: usize) -> f64 {
    let room = sigma - alpha as f64 - 1.0;
    let mut best = f64::INFINITY;
    for j in 1..20 {
        let eps = room * j as f64 / 20.0;
        if eps < 0.05 {
            continue;
        }
        let kappa = room - eps;
        let log_b = log_divisor_constant(eps) - kappa * (n as f64).ln() - kappa.ln();
        best = best.min(log_b.exp());
    }
    best
}

/// Partial sum over `n ≤ N`, for `Re s > α + 1.1`.
pub fn estermann_series(s: Complex64, x: ReducedFraction, alpha: u32, n: usize) -> Result<EstermannPoint> {
    if !(s.re > alpha as f64 + 1.0 + MARGIN) {
        return Err(Error::Domain { value: s.re, domain: "Re s > α + 1.1" });
    }
    if n < 1 {
        return Err(invalid("N", "must be at least 1"));
    }
    let (r, b) = (x.residue(), x.b());
    let sig = sigma_sieve(n, alpha as f64);
    let (mut re, mut im) = (Neumaier::new(), Neumaier::new());
    for k in 1..=n {
        let phase = 2.0 * PI * (mul_mod(k as u64, r, b) as f64 / b as f64);
        let w = sig[k] * (-s * (k as f64).ln()).exp() * Complex64::from_polar(1.0, phase);
        re.add(w.re);
        im.add(w.im);
    }
    Ok(EstermannPoint {
        s,
        x,
        alpha,
        value: Complex64::new(re.value(), im.value()),
        tail_bound: tail_bound(s.re, alpha, n),
    })
}

/// Coefficients of `P_α` with `cot^{(α)}(z) = P_α(cot z)`, lowest degree first.
pub fn cot_derivative_poly(alpha: u32) -> Result<Vec<i128>> {
    if alpha > MAX_ALPHA {
        return Err(Error::TooLarge { value: alpha as u128, bound: MAX_ALPHA as u128 });
    }
    let mut p = vec![0i128, 1];
    for _ in 0..alpha {
        // P ↦ P′·(−1 − c²)
        let d: Vec<i128> = (1..p.len()).map(|k| k as i128 * p[k]).collect();
        let mut next = vec![0i128; d.len() + 2];
        for (k, &c) in d.iter().enumerate() {
            next[k] -= c;
            next[k + 2] -= c;
        }
        p = next;
    }
    Ok(p)
}

fn horner(p: &[i128], c: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &k| acc * c + k as f64)
}

/// `E(0, r/b, α)` from the closed forms.
///
/// Even `α`: `(−i/2)^{α+1}·Σ_{m<b} (m/b)·cot^{(α)}(πmr/b) + δ_{α,0}/4`.
/// Odd `α`: `B_{α+1}/(2(α+1))`. For `b = 1`: `(−1)^{α+1}B_{α+1}/(2(α+1))`.
pub fn ishibashi_value(x: ReducedFraction, alpha: u32) -> Result<Complex64> {
    let bern = bernoulli_f64(alpha as usize + 1) / (2.0 * (alpha as f64 + 1.0));
    if x.b() == 1 {
        let sign = if alpha % 2 == 0 { -1.0 } else { 1.0 };
        return Ok(Complex64::new(sign * bern, 0.0));
    }
    if alpha % 2 == 1 {
        return Ok(Complex64::new(bern, 0.0));
    }
    let p = cot_derivative_poly(alpha)?;
    let (r, b) = (x.residue(), x.b());
    let mut acc = Neumaier::new();
    // P_α is odd for even α, so m and b − m pair up
    for m in 1..=(b - 1) / 2 {
        let c = cot_pi_frac(mul_mod(m, r, b), b);
        acc.add((2.0 * m as f64 - b as f64) / b as f64 * horner(&p, c));
    }
    let factor = Complex64::new(0.0, -0.5).powu(alpha + 1);
    let delta = if alpha == 0 { 0.25 } else { 0.0 };
    Ok(factor * acc.value() + delta)
}

/// Largest `|E(0, r/b, 0) − 1/4 − (i/2)c₀(r/b)|` over reduced `r/b`, `2 ≤ b ≤ b_max`.
pub fn ishibashi_c0_crosscheck(b_max: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in 2..=b_max {
        for r in coprime_residues(b) {
            let x = ReducedFraction::coprime(r, b)?;
            let e = ishibashi_value(x, 0)?;
            let want = Complex64::new(0.25, 0.5 * c0_naive(x)?.value);
            worst = worst.max((e - want).norm());
        }
    }
    Ok(worst)
}
