//! The real-line values of the reciprocity kernel `F(x) = (i/2)ψ₀(x)`.
//!
//! For `x > 0`,
//!
//! `F(x) = −(log 2πx − γ)/(πx) + (4/(πx))·Σ_{n≥1} d(n)·h(2πn/x)`
//!
//! with `h(y) = Re[e^{iy}E₁(iy)]`, the auxiliary cosine-integral function,
//! which decays like `1/y²`. The first few `n` are summed directly; the rest
//! use the asymptotic expansion `h(y) ~ Σ_k (−1)^{k+1}(2k−1)!/y^{2k}` with the
//! exact tails `Σ_{n>N} d(n)n^{−2k}`.
//!
//! The hot path never runs that series. Below `x = 1/8` the whole sum is
//! the asymptotic expansion (a polynomial in `x²`), and on `[1/8, 1]` the
//! sum is read from piecewise Chebyshev interpolants built once.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numtheory::bernoulli::{bernoulli_f64, zeta_even};
use crate::EULER_GAMMA;

const U: f64 = f64::EPSILON / 2.0;
const SMALL_X: f64 = 0.125;
const PANELS: usize = 14;
const PANEL_DEGREE: usize = 18;
const MAX_DIRECT: usize = 12;
const MAX_K: usize = 40;

/// A real value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub error_bound: f64,
}

/// `e^z·E₁(z)` by the modified Lentz algorithm on
/// `1/(z+1 − 1²/(z+3 − 2²/(z+5 − …)))`; accurate for `|z| ≳ 1`.
pub fn exp_e1(z: Complex64) -> Complex64 {
    let tiny = 1e-150;
    let guard = |v: Complex64| if v.norm() < tiny { Complex64::new(tiny, 0.0) } else { v };
    let mut f = guard(z + 1.0);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..500 {
        let jf = j as f64;
        let a = -jf * jf;
        let b = z + (2.0 * jf + 1.0);
        d = guard(b + a * d).inv();
        c = guard(b + a / c);
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-17 {
            break;
        }
    }
    f.inv()
}

/// `h(y) = Re[e^{iy}E₁(iy)] = −Ci(y)cos y − (Si(y) − π/2)sin y`.
pub fn aux_cos_integral(y: f64) -> f64 {
    exp_e1(Complex64::new(0.0, y)).re
}

/// `ζ(s, m) = Σ_{j≥0} (m + j)^{−s}` for real `s > 1` and integer `m ≥ 1`.
fn hurwitz_integer(s: f64, m: u64) -> f64 {
    const HEAD: u64 = 64;
    let mut acc = 0.0;
    for j in (0..HEAD).rev() {
        acc += ((m + j) as f64).powf(-s);
    }
    let a = (m + HEAD) as f64;
    let a_s = a.powf(-s);
    acc += a * a_s / (s - 1.0) + 0.5 * a_s;
    // B_{2i}/(2i)! · s(s+1)…(s+2i−2) · a^{−s−2i+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut apow = a_s / a;
    for i in 1..=10 {
        let term = bernoulli_f64(2 * i) / fact * rising * apow;
        acc += term;
        if term.abs() < 1e-18 * acc {
            break;
        }
        let fi = i as f64;
        rising *= (s + 2.0 * fi - 1.0) * (s + 2.0 * fi);
        fact *= (2.0 * fi + 1.0) * (2.0 * fi + 2.0);
        apow /= a * a;
    }
    acc
}

/// `Σ_{n>N} d(n)·n^{−s}` as a sum of positive terms.
///
/// Pairs `(a, c)` with `ac > N` split into `a ≤ N, c > ⌊N/a⌋` and `a > N`.
fn divisor_tail(s: f64, n: u64) -> f64 {
    let mut acc = hurwitz_integer(s, 1) * hurwitz_integer(s, n + 1);
    for a in 1..=n {
        acc += (a as f64).powf(-s) * hurwitz_integer(s, n / a + 1);
    }
    acc
}

struct Tables {
    /// `tails[N][k−1] = Σ_{n>N} d(n) n^{−2k}`.
    tails: Vec<Vec<f64>>,
    divisors: Vec<f64>,
    /// Chebyshev coefficients per panel of `[SMALL_X, 1]`.
    panels: Vec<Vec<f64>>,
    /// Largest interpolation defect seen at check points, inflated.
    table_error: f64,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let divisors = crate::numtheory::arith::divisor_count_sieve(MAX_DIRECT)
            .into_iter()
            .map(f64::from)
            .collect();
        let tails = (0..=MAX_DIRECT as u64)
            .map(|n| {
                (1..=MAX_K)
                    .map(|k| if n == 0 { zeta_even(k) * zeta_even(k) } else { divisor_tail(2.0 * k as f64, n) })
                    .collect()
            })
            .collect();
        let mut t = Tables { tails, divisors, panels: Vec::new(), table_error: 0.0 };
        let width = (1.0 - SMALL_X) / PANELS as f64;
        let mut worst: f64 = 0.0;
        for p in 0..PANELS {
            let lo = SMALL_X + p as f64 * width;
            let hi = lo + width;
            let coeffs = chebyshev_fit(|x| divisor_series_direct(&t, x).0, lo, hi, PANEL_DEGREE);
            for i in 0..7 {
                let x = lo + (i as f64 + 0.37) / 7.0 * width;
                let direct = divisor_series_direct(&t, x).0;
                worst = worst.max((clenshaw(&coeffs, lo, hi, x) - direct).abs());
            }
            t.panels.push(coeffs);
        }
        t.table_error = 4.0 * worst + 8.0 * U * 1e-2;
        t
    })
}

/// `Σ_n d(n)·h(2πn/x)`: direct terms `n ≤ N`, asymptotic tail beyond.
/// Returns the value and the magnitude of the last tail term used.
fn divisor_series_direct(t: &Tables, x: f64) -> (f64, f64) {
    let n_direct = ((40.0 * x / (2.0 * PI)).ceil() as usize + 1).min(MAX_DIRECT);
    let mut acc = 0.0;
    for n in 1..=n_direct {
        acc += t.divisors[n] * aux_cos_integral(2.0 * PI * n as f64 / x);
    }
    let (tail, last) = asymptotic_tail(t, x, n_direct);
    (acc + tail, last)
}

/// `Σ_k (−1)^{k+1}(2k−1)!(x/2π)^{2k}·T_k(N)` stopped at its smallest term.
fn asymptotic_tail(t: &Tables, x: f64, n: usize) -> (f64, f64) {
    let w = (x / (2.0 * PI)).powi(2);
    let tails = &t.tails[n];
    let mut coef = w;
    let mut acc = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..=MAX_K {
        let term = coef * tails[k - 1];
        if term > last {
            break;
        }
        acc += if k % 2 == 1 { term } else { -term };
        last = term;
        if term <= 1e-19 * acc.abs() {
            break;
        }
        let kf = k as f64;
        coef *= 2.0 * kf * (2.0 * kf + 1.0) * w;
    }
    (acc, last)
}

fn chebyshev_fit<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, degree: usize) -> Vec<f64> {
    let n = degree + 1;
    let vals: Vec<f64> = (0..n)
        .map(|j| {
            let theta = PI * (j as f64 + 0.5) / n as f64;
            f(0.5 * (lo + hi) + 0.5 * (hi - lo) * theta.cos())
        })
        .collect();
    (0..n)
        .map(|k| {
            let s: f64 = vals
                .iter()
                .enumerate()
                .map(|(j, v)| v * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            let c = 2.0 * s / n as f64;
            if k == 0 {
                c / 2.0
            } else {
                c
            }
        })
        .collect()
}

#[inline]
fn clenshaw(coeffs: &[f64], lo: f64, hi: f64, x: f64) -> f64 {
    let u = (2.0 * x - lo - hi) / (hi - lo);
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    u * b1 - b2 + coeffs[0]
}

/// `Σ_n d(n)·h(2πn/x)` and its absolute error bound, for `0 < x ≤ 1`.
#[inline]
fn divisor_series(x: f64) -> (f64, f64) {
    let t = tables();
    if x < SMALL_X {
        let (v, last) = asymptotic_tail(t, x, 0);
        (v, last + 4.0 * U * v.abs())
    } else {
        let width = (1.0 - SMALL_X) / PANELS as f64;
        let p = (((x - SMALL_X) / width) as usize).min(PANELS - 1);
        let lo = SMALL_X + p as f64 * width;
        let v = clenshaw(&t.panels[p], lo, lo + width, x);
        (v, t.table_error + 8.0 * U * v.abs())
    }
}

/// `F(x) = (i/2)ψ₀(x)` for `0 < x ≤ 1`, with an error bound.
pub fn reciprocity_kernel(x: f64) -> Result<KernelValue> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain { value: x, domain: "(0, 1]" });
    }
    let (s, s_err) = divisor_series(x);
    let lead = (2.0 * PI * x).ln() - EULER_GAMMA;
    let px = PI * x;
    let value = (4.0 * s - lead) / px;
    let error_bound = 4.0 * s_err / px + 6.0 * U * (lead.abs() + 1.0 + 4.0 * s.abs()) / px;
    Ok(KernelValue { value, error_bound })
}

/// `F(x)` without bounds or checks, for inner loops; `0 < x ≤ 1`.
#[inline]
pub fn reciprocity_kernel_value(x: f64) -> f64 {
    let (s, _) = divisor_series(x);
    (4.0 * s - ((2.0 * PI * x).ln() - EULER_GAMMA)) / (PI * x)
}

/// `F(x)` from the direct-plus-tail series, bypassing the interpolants.
pub fn reciprocity_kernel_direct(x: f64) -> Result<KernelValue> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain { value: x, domain: "(0, 1]" });
    }
    let (s, last) = divisor_series_direct(tables(), x);
    let lead = (2.0 * PI * x).ln() - EULER_GAMMA;
    let px = PI * x;
    Ok(KernelValue {
        value: (4.0 * s - lead) / px,
        error_bound: 4.0 * (last + 16.0 * U * s.abs()) / px + 6.0 * U * (lead.abs() + 1.0) / px,
    })
}

/// Bound of the interpolation tables, for reports.
pub fn kernel_table_error() -> f64 {
    tables().table_error
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aux_function_limits() {
        // h(y) → 1/y² − 6/y⁴ for large y
        for &y in &[50.0f64, 200.0, 1000.0] {
            let want = 1.0 / (y * y) - 6.0 / y.powi(4) + 120.0 / y.powi(6);
            assert!((aux_cos_integral(y) - want).abs() < 1e4 / y.powi(8));
        }
        // h(y) = ∫₀^∞ e^{−yt}·t/(1+t²) dt
        let y = 3.0;
        let q = crate::quad::adaptive_simpson(&|t: f64| (-y * t).exp() * t / (1.0 + t * t), 0.0, 30.0, 1e-14, 40);
        assert!((aux_cos_integral(y) - q.value).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_and_tails() {
        assert!((hurwitz_integer(2.0, 1) - PI * PI / 6.0).abs() < 1e-15);
        assert!((hurwitz_integer(4.0, 3) - (PI.powi(4) / 90.0 - 1.0 - 1.0 / 16.0)).abs() < 1e-15);
        let z4 = PI.powi(4) / 90.0;
        let direct = z4 * z4 - 1.0 - 2.0 / 16.0 - 2.0 / 81.0;
        assert!((divisor_tail(4.0, 3) - direct).abs() < 1e-15);
    }

    /// The kernel equals the reciprocity defect of the naive sums.
    #[test]
    fn kernel_matches_reciprocity() {
        use crate::cotangent::c0_naive;
        use crate::ReducedFraction;
        let c0 = |r: u64, b: u64| {
            if b < 2 || r % b == 0 {
                0.0
            } else {
                c0_naive(ReducedFraction::new(r % b, b).unwrap()).unwrap().value
            }
        };
        for b in 2..60u64 {
            for r in crate::numtheory::fraction::coprime_residues(b) {
                let defect = c0(r, b) + b as f64 / r as f64 * c0(b, r) - 1.0 / (PI * r as f64);
                let x = r as f64 / b as f64;
                let k = reciprocity_kernel(x).unwrap();
                let d = reciprocity_kernel_direct(x).unwrap();
                let tol = 1e-12 * (1.0 + defect.abs());
                assert!((k.value - defect).abs() < k.error_bound + tol, "{r}/{b}");
                assert!((d.value - defect).abs() < d.error_bound + tol, "{r}/{b}");
            }
        }
        let half = reciprocity_kernel(0.5).unwrap().value;
        assert!((half + 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn tables_agree_with_direct_series() {
        assert!(kernel_table_error() < 1e-14);
        for i in 1..2000 {
            let x = i as f64 / 2000.0;
            let a = reciprocity_kernel(x).unwrap();
            let d = reciprocity_kernel_direct(x).unwrap();
            assert!((a.value - d.value).abs() <= a.error_bound + d.error_bound, "x={x}");
            assert_eq!(a.value, reciprocity_kernel_value(x));
        }
        assert!(reciprocity_kernel(0.0).is_err());
        assert!(reciprocity_kernel(1.5).is_err());
    }

    #[test]
    fn small_argument_leading_behaviour() {
        // (4/(πx))·Σ d(n)h(2πn/x) ≈ xζ(2)²/π³
        let z2 = PI * PI / 6.0;
        for &x in &[1e-3, 1e-6, 1e-12] {
            let rest = 4.0 * divisor_series(x).0 / (PI * x);
            let lead = x * z2 * z2 / PI.powi(3);
            assert!((rest / lead - 1.0).abs() < 1e-6);
        }
    }
}
