use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fast_eval::c0_fast_value;
use crate::numtheory::arith::{gcd, mod_inverse};
use crate::numtheory::zeta::zeta_critical_line;
use crate::quad::PanelRule;
use crate::summation::Neumaier;
use crate::{log_two_pi_minus_gamma, EULER_GAMMA};

/// `V(r/b)` through `V(r/b) = −c₀(r̄/b)`; `V(r/1) = 0`.
pub fn vasyunin_fast(r: u64, b: u64) -> f64 {
    if b < 2 {
        return 0.0;
    }
    -c0_fast_value(mod_inverse(r % b, b).expect("coprime arguments"), b)
}

/// `(log 2π − γ)/2·(1/r + 1/b) + (b − r)/(2rb)·log(r/b) − π/(2rb)·(V(r/b) + V(b/r))`
/// for coprime `r, b`, which equals
/// `(1/(2π√(rb)))∫|ζ(1/2 + it)|²(r/b)^{it} dt/(1/4 + t²)`.
pub fn vasyunin_closed_form(r: u64, b: u64) -> Result<f64> {
    if r == 0 || b == 0 {
        return Err(invalid("r, b", "must be positive"));
    }
    if gcd(r, b) != 1 {
        return Err(Error::NotCoprime { r, b });
    }
    let (lo, hi) = if r <= b { (r, b) } else { (b, r) };
    let (rf, bf) = (lo as f64, hi as f64);
    let v = vasyunin_fast(lo, hi) + vasyunin_fast(hi % lo, lo);
    Ok(log_two_pi_minus_gamma() / 2.0 * (1.0 / rf + 1.0 / bf) + (bf - rf) / (2.0 * rf * bf) * (rf / bf).ln()
        - PI / (2.0 * rf * bf) * v)
}

/// `(1/2π)∫|ζ(1/2 + it)|²(r/b)^{it} dt/(1/4 + t²)`, which depends on `r/b`
/// only: with `r/b = h/k` in lowest terms it is `√(hk)` times the closed form.
pub fn gram_entry(r: u64, b: u64) -> Result<f64> {
    if r == 0 || b == 0 {
        return Err(invalid("r, b", "must be positive"));
    }
    let d = gcd(r, b);
    let (h, k) = (r / d, b / d);
    Ok(((h * k) as f64).sqrt() * vasyunin_closed_form(h, k)?)
}

/// The Gram coefficient `gram_entry(r, b)/√(rb)` of the quadratic form.
pub fn gram_coefficient(r: u64, b: u64) -> Result<f64> {
    let d = gcd(r, b);
    Ok(vasyunin_closed_form(r / d, b / d)? / d as f64)
}

/// `(1/2π)∫ Re(ζ(1/2 + it)·n^{−1/2−it}) dt/(1/4 + t²) = −(1 + log n − γ)/n`,
/// from the double pole at `s = 1` after moving the line to `Re s > 1`.
pub fn linear_term(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", "must be positive"));
    }
    let nf = n as f64;
    Ok(-(1.0 + nf.ln() - EULER_GAMMA) / nf)
}

/// Values of `ζ(1/2 + it)` on a composite Gauss–Legendre grid over `[0, T]`.
#[derive(Debug, Clone)]
pub struct CriticalLineGrid {
    pub t_max: f64,
    nodes: Vec<(f64, f64, Complex64)>,
}

impl CriticalLineGrid {
    /// Panels of width at most `1/2`, eight nodes each.
    pub fn new(t_max: f64) -> Result<Self> {
        if !(t_max >= 10.0 && t_max <= 1e4) {
            return Err(Error::Domain { value: t_max, domain: "10 ≤ T ≤ 10⁴" });
        }
        let panels = (2.0 * t_max).ceil() as usize;
        let pts = PanelRule::new(8).points(0.0, t_max, panels);
        let nodes = pts.into_par_iter().map(|(t, w)| (t, w, zeta_critical_line(t).value)).collect();
        Ok(Self { t_max, nodes })
    }

    /// `(1/π)∫₀^T f(t, ζ(1/2 + it)) dt/(1/4 + t²)`.
    pub fn integrate<F: Fn(f64, Complex64) -> f64>(&self, f: F) -> f64 {
        let mut acc = Neumaier::new();
        for &(t, w, z) in &self.nodes {
            acc.add(w * f(t, z) / (0.25 + t * t));
        }
        acc.value() / PI
    }

    /// `(1/π)∫_T^∞ (log(t/(2πhk)) + 2γ)/√(hk) dt/t²`, the mean-value
    /// continuation of `gram_entry` for `r/b = h/k`.
    pub fn gram_tail(&self, h: u64, k: u64) -> f64 {
        let hk = (h * k) as f64;
        let t = self.t_max;
        ((t / (2.0 * PI * hk)).ln() + 2.0 * EULER_GAMMA + 1.0) / (PI * hk.sqrt() * t)
    }

    /// Quadrature value of [`gram_entry`], tail included.
    pub fn gram_entry(&self, r: u64, b: u64) -> f64 {
        let d = gcd(r, b);
        let (h, k) = (r / d, b / d);
        let lam = (h as f64 / k as f64).ln();
        self.integrate(|t, z| z.norm_sqr() * (t * lam).cos()) + self.gram_tail(h, k)
    }

    /// Quadrature value of [`linear_term`]. Only `n = 1` has a mean value on
    /// the tail, giving `1/(πT)`.
    pub fn linear_term(&self, n: u64) -> f64 {
        let nf = n as f64;
        let ln = nf.ln();
        let head = self.integrate(|t, z| (z * Complex64::from_polar(nf.powf(-0.5), -t * ln)).re);
        head + if n == 1 { 1.0 / (PI * self.t_max) } else { 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureDefect {
    pub r: u64,
    pub b: u64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub relative_defect: f64,
}

/// Closed form of [`gram_entry`] against the quadrature on `grid`.
pub fn gram_quadrature_check(r: u64, b: u64, grid: &CriticalLineGrid) -> Result<QuadratureDefect> {
    let closed_form = gram_entry(r, b)?;
    let quadrature = grid.gram_entry(r, b);
    Ok(QuadratureDefect { r, b, closed_form, quadrature, relative_defect: ((quadrature - closed_form) / closed_form).abs() })
}

/// Residue formula of [`linear_term`] against quadrature for `n ≤ n_max`.
/// Fails when any relative defect reaches `tol`.
pub fn linear_term_gate(n_max: u64, grid: &CriticalLineGrid, tol: f64) -> Result<Vec<QuadratureDefect>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let closed_form = linear_term(n)?;
        let quadrature = grid.linear_term(n);
        let relative_defect = ((quadrature - closed_form) / closed_form).abs();
        if !(relative_defect < tol) {
            return Err(Error::NotConverged(format!(
                "linear term n = {n}: residue {closed_form} vs quadrature {quadrature}"
            )));
        }
        out.push(QuadratureDefect { r: n, b: 1, closed_form, quadrature, relative_defect });
    }
    Ok(out)
}
