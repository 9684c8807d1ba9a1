use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cotangent::{c0_naive, Method, SumValue};
use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::gcd;
use crate::numtheory::bernoulli::zeta_even;
use crate::numtheory::fraction::ReducedFraction;
use crate::EULER_GAMMA;

const U: f64 = f64::EPSILON / 2.0;

/// `(b/(πr))·(log b − log 2π + γ)`.
pub fn main_terms(b: u64, r: u64) -> f64 {
    let bf = b as f64;
    bf / (PI * r as f64) * (bf.ln() - (2.0 * PI).ln() + EULER_GAMMA)
}

/// Coefficient `E_l` of `b^{−l}` in the expansion of `c₀(1/b)`.
///
/// Even indices vanish; `E_{2k−1} = (4/π)(−1)^{k+1}(2k−1)!·ζ(2k)²/(2π)^{2k}`,
/// so `E₁ = π/36`.
pub fn expansion_coefficient(l: usize) -> f64 {
    if l == 0 || l % 2 == 0 {
        return 0.0;
    }
    let k = (l + 1) / 2;
    let mut fact = 1.0;
    for i in 1..=l {
        fact *= i as f64;
    }
    let z = zeta_even(k);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    4.0 / PI * sign * fact * z * z / (2.0 * PI).powi(2 * k as i32)
}

/// `C₁(r, b₀) = −log r/(πr) − c₀(b₀/r)/r`, the coefficient of `b` in
/// `c₀(r/b)` along `b ≡ b₀ (mod r)`.
pub fn linear_coefficient(r: u64, b0: u64) -> Result<f64> {
    if r == 0 || gcd(r, b0) != 1 {
        return Err(Error::NotCoprime { r, b: b0 });
    }
    let c = if r < 2 { 0.0 } else { c0_naive(ReducedFraction::coprime(b0 % r, r)?)?.value };
    Ok(-(r as f64).ln() / (PI * r as f64) - c / r as f64)
}

/// Asymptotic `c₀(r/b)` with `n_terms` inverse powers:
/// `main_terms + C₁(r, b mod r)·b + 1/(πr) + Σ_{l≤n} E_l·(r/b)^l`.
///
/// The tail is bounded by the first omitted nonzero term.
pub fn c0_asymptotic(b: u64, n_terms: usize, r: u64) -> Result<SumValue> {
    if r == 0 || gcd(r, b) != 1 {
        return Err(Error::NotCoprime { r, b });
    }
    let need = 6 * (n_terms as u64 / 2 + 1);
    if b / r < need {
        return Err(Error::DenominatorTooSmall { b, min: need * r });
    }
    let x = r as f64 / b as f64;
    let mut value = main_terms(b, r) + 1.0 / (PI * r as f64);
    if r > 1 {
        value += linear_coefficient(r, b % r)? * b as f64;
    }
    for l in 1..=n_terms {
        value += expansion_coefficient(l) * x.powi(l as i32);
    }
    let next = if n_terms % 2 == 0 { n_terms + 1 } else { n_terms + 2 };
    let tail = (expansion_coefficient(next) * x.powi(next as i32)).abs();
    let bf = b as f64;
    Ok(SumValue {
        value,
        method: Method::Asymptotic,
        error_bound: tail + 8.0 * U * bf * (bf.ln() + 4.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub r: u64,
    pub b0: u64,
    /// Coefficient of `b`.
    pub c1: f64,
    pub c1_stderr: f64,
    /// Constant term.
    pub constant: f64,
    pub constant_stderr: f64,
    /// Coefficient of `1/b`.
    pub e1: f64,
    pub e1_stderr: f64,
    /// `(b, observed − fitted)`.
    pub residuals: Vec<(u64, f64)>,
    pub max_residual: f64,
    /// Set when the normal equations are badly conditioned.
    pub ill_conditioned: bool,
}

/// Least squares of `c₀(r/b) − main_terms` on `{b, 1, 1/b}` over the grid.
pub fn fit_constants(r: u64, b0: u64, b_grid: &[u64]) -> Result<FitReport> {
    if r == 0 || gcd(r, b0) != 1 {
        return Err(Error::NotCoprime { r, b: b0 });
    }
    if b_grid.len() < 4 {
        return Err(invalid("b_grid", "needs at least 4 points"));
    }
    let mut ys = Vec::with_capacity(b_grid.len());
    for &b in b_grid {
        if b % r != b0 % r {
            return Err(invalid("b_grid", format!("{b} is not ≡ {b0} mod {r}")));
        }
        let c = c0_naive(ReducedFraction::coprime(r, b)?)?.value;
        ys.push(c - main_terms(b, r));
    }
    let n = b_grid.len();
    // columns scaled to unit size for conditioning
    let bmax = *b_grid.iter().max().unwrap_or(&1) as f64;
    let bmin = *b_grid.iter().min().unwrap_or(&1) as f64;
    let x = DMatrix::from_fn(n, 3, |i, j| {
        let b = b_grid[i] as f64;
        match j {
            0 => b / bmax,
            1 => 1.0,
            _ => bmin / b,
        }
    });
    let y = DVector::from_vec(ys);
    let xtx = x.transpose() * &x;
    let xty = x.transpose() * &y;
    let chol = xtx.clone().cholesky().ok_or(Error::NotPositiveDefinite { order: 3 })?;
    let beta = chol.solve(&xty);
    let fitted = &x * &beta;
    let resid = &y - &fitted;
    let dof = (n - 3).max(1) as f64;
    let sigma2 = resid.norm_squared() / dof;
    // rounding in the naive sums sets a floor on the noise level
    let floor = b_grid.iter().map(|&b| super::naive_rounding_estimate(b)).fold(0.0, f64::max);
    let sigma2 = sigma2.max(floor * floor);
    let inv = chol.inverse();
    let se = |j: usize| (sigma2 * inv[(j, j)]).sqrt();
    let eig = xtx.symmetric_eigenvalues();
    let cond = eig.max() / eig.min().max(f64::MIN_POSITIVE);
    let residuals: Vec<(u64, f64)> = b_grid.iter().zip(resid.iter()).map(|(&b, &e)| (b, e)).collect();
    let max_residual = resid.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    Ok(FitReport {
        r,
        b0,
        c1: beta[0] / bmax,
        c1_stderr: se(0) / bmax,
        constant: beta[1],
        constant_stderr: se(1),
        e1: beta[2] * bmin,
        e1_stderr: se(2) * bmin,
        residuals,
        max_residual,
        ill_conditioned: cond > 1e12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert!((expansion_coefficient(1) - PI / 36.0).abs() < 1e-16);
        assert_eq!(expansion_coefficient(2), 0.0);
        // E₃ = −(4/π)·3!·ζ(4)²/(2π)⁴
        let z4 = PI.powi(4) / 90.0;
        let e3 = -4.0 / PI * 6.0 * z4 * z4 / (2.0 * PI).powi(4);
        assert!((expansion_coefficient(3) - e3).abs() < 1e-17);
        assert_eq!(linear_coefficient(1, 0).unwrap(), 0.0);
        assert!((linear_coefficient(2, 1).unwrap() + 2f64.ln() / (2.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn asymptotic_matches_naive() {
        for b in [100u64, 1000, 12_345, 100_000] {
            let naive = c0_naive(ReducedFraction::new(1, b).unwrap()).unwrap().value;
            let a = c0_asymptotic(b, 5, 1).unwrap();
            assert!((a.value - naive).abs() <= a.error_bound, "b={b}: {} vs {naive}", a.value);
            assert!((main_terms(b, 1) - naive).abs() < 1.0);
        }
        for (r, b) in [(2u64, 1001u64), (3, 1000), (7, 12_346), (10, 99_999)] {
            let naive = c0_naive(ReducedFraction::new(r, b).unwrap()).unwrap().value;
            let a = c0_asymptotic(b, 5, r).unwrap();
            assert!((a.value - naive).abs() <= a.error_bound, "{r}/{b}: {} vs {naive}", a.value);
        }
        assert!(c0_asymptotic(10, 4, 1).is_err());
        assert!(c0_asymptotic(1000, 4, 2).is_err());
    }

    #[test]
    fn fit_recovers_constants() {
        let grid: Vec<u64> = (0..12).map(|i| 1000 + 737 * i).collect();
        let f = fit_constants(1, 0, &grid).unwrap();
        assert!(f.c1.abs() < 3.0 * f.c1_stderr);
        assert!((f.constant - 1.0 / PI).abs() < 1e-8);
        assert!((f.e1 - PI / 36.0).abs() < 1e-3);
        let odd: Vec<u64> = (0..12).map(|i| 1001 + 738 * i).collect();
        let f2 = fit_constants(2, 1, &odd).unwrap();
        let want = linear_coefficient(2, 1).unwrap();
        assert!((f2.c1 - want).abs() < 3.0 * f2.c1_stderr);
        assert!(fit_constants(2, 1, &grid).is_err());
    }
}
