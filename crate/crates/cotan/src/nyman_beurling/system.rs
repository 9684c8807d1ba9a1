use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gram::{gram_coefficient, linear_term};
use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::mobius_sieve;
use crate::{log_two_pi_minus_gamma, EULER_GAMMA};

const MAX_N: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    VnPolynomial,
    Optimal,
}

/// `2 + γ − log 4π`.
pub fn bcf_constant() -> f64 {
    2.0 + EULER_GAMMA - (4.0 * std::f64::consts::PI).ln()
}

/// `a_n = μ(n)(1 − log n/log N)` for `n ≤ N`.
pub fn vn_coefficients(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(invalid("N", "must be at least 2"));
    }
    let mu = mobius_sieve(n);
    let ln_n = (n as f64).ln();
    Ok((1..=n).map(|k| if mu[k] == 0 { 0.0 } else { mu[k] as f64 * (1.0 - (k as f64).ln() / ln_n) }).collect())
}

/// Gram matrix `G_{rb}` for `1 ≤ r, b ≤ n`, assembled from the upper triangle.
pub fn gram_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 || n > MAX_N {
        return Err(Error::TooLarge { value: n as u128, bound: MAX_N as u128 });
    }
    let rows: Vec<Vec<f64>> = (1..=n as u64)
        .into_par_iter()
        .map(|r| (r..=n as u64).map(|b| gram_coefficient(r, b)).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;
    let mut g = DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            g[(i, i + off)] = v;
            g[(i + off, i)] = v;
        }
    }
    Ok(g)
}

pub fn linear_vector(n: usize) -> Result<DVector<f64>> {
    let v: Result<Vec<f64>> = (1..=n as u64).map(linear_term).collect();
    Ok(DVector::from_vec(v?))
}

/// `1 − 2aᵀℓ + aᵀGa`.
pub fn quadratic_form(g: &DMatrix<f64>, l: &DVector<f64>, a: &DVector<f64>) -> f64 {
    1.0 - 2.0 * a.dot(l) + a.dot(&(g * a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramSystem {
    pub n: usize,
    pub g: DMatrix<f64>,
    pub linear: DVector<f64>,
    pub coeffs: DVector<f64>,
    pub kind: SystemKind,
    pub d2: f64,
}

#[derive(Serialize)]
struct Metadata<'a> {
    n: usize,
    kind: SystemKind,
    d2: f64,
    linear: &'a [f64],
    coeffs: &'a [f64],
    log_two_pi_minus_gamma: f64,
    euler_gamma: f64,
    bcf_constant: f64,
}

impl GramSystem {
    /// Row-major CSV of `G`, one row per line.
    pub fn matrix_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:.16e}", self.g[(i, j)])).collect();
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }

    pub fn metadata_json(&self) -> String {
        let meta = Metadata {
            n: self.n,
            kind: self.kind,
            d2: self.d2,
            linear: self.linear.as_slice(),
            coeffs: self.coeffs.as_slice(),
            log_two_pi_minus_gamma: log_two_pi_minus_gamma(),
            euler_gamma: EULER_GAMMA,
            bcf_constant: bcf_constant(),
        };
        serde_json::to_string_pretty(&meta).expect("plain data serialises")
    }

    /// Residual `‖Ga − ℓ‖∞`, zero for the optimal system.
    pub fn normal_equation_residual(&self) -> f64 {
        (&self.g * &self.coeffs - &self.linear).amax()
    }
}

/// `d_N²` with the V_N coefficients or at the optimum `Ga = ℓ`.
pub fn d_squared(n: usize, kind: SystemKind) -> Result<(f64, GramSystem)> {
    let g = gram_matrix(n)?;
    let l = linear_vector(n)?;
    let coeffs = match kind {
        SystemKind::VnPolynomial => {
            if n == 1 {
                DVector::from_element(1, 1.0)
            } else {
                DVector::from_vec(vn_coefficients(n)?)
            }
        }
        SystemKind::Optimal => g.clone().cholesky().ok_or(Error::NotPositiveDefinite { order: n })?.solve(&l),
    };
    let d2 = quadratic_form(&g, &l, &coeffs);
    Ok((d2, GramSystem { n, g, linear: l, coeffs, kind, d2 }))
}

/// `d²(N)` for every `N ≤ n` from one factorisation `G = LLᵀ`:
/// with `Ly = ℓ`, the optimum over the first `N` coordinates is `1 − Σ_{i≤N} y_i²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub optimal: Vec<f64>,
    /// `d²(V_N)`; the first entry uses `a₁ = 1`.
    pub vn: Vec<f64>,
}

pub fn distance_profile(n: usize) -> Result<DistanceProfile> {
    let g = gram_matrix(n)?;
    let l = linear_vector(n)?;
    let chol = g.clone().cholesky().ok_or(Error::NotPositiveDefinite { order: n })?;
    let y = chol.l().solve_lower_triangular(&l).ok_or(Error::NotPositiveDefinite { order: n })?;
    let mut acc = 0.0;
    let optimal = y
        .iter()
        .map(|v| {
            acc += v * v;
            1.0 - acc
        })
        .collect();
    let vn = (1..=n)
        .into_par_iter()
        .map(|m| {
            let a = if m == 1 { vec![1.0] } else { vn_coefficients(m)? };
            let a = DVector::from_vec(a);
            let gm = g.view((0, 0), (m, m));
            let lm = l.rows(0, m);
            Ok(1.0 - 2.0 * a.dot(&lm) + a.dot(&(gm * &a)))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(DistanceProfile { optimal, vn })
}

pub fn smallest_eigenvalue(n: usize) -> Result<f64> {
    let g = gram_matrix(n)?;
    Ok(g.symmetric_eigenvalues().min())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BcfRow {
    pub n: usize,
    pub d2_vn: f64,
    pub d2_optimal: f64,
    pub vn_scaled: f64,
    pub optimal_scaled: f64,
}

/// `d²·log N` for each `N`, next to `2 + γ − log 4π`. No tolerance applies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcfReport {
    pub constant: f64,
    pub rows: Vec<BcfRow>,
    /// Set when `optimal_scaled` decreases along the list.
    pub optimal_decreasing: bool,
    pub note: String,
}

impl BcfReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,d2_vn,d2_optimal,vn_log_n,optimal_log_n,constant\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.n, r.d2_vn, r.d2_optimal, r.vn_scaled, r.optimal_scaled, self.constant
            );
        }
        s
    }
}

pub fn bcf_asymptotic_report(ns: &[usize]) -> Result<BcfReport> {
    if ns.is_empty() || ns.iter().any(|&n| !(10..=MAX_N).contains(&n)) {
        return Err(invalid("N_list", "entries must lie in [10, 2000]"));
    }
    let top = *ns.iter().max().expect("non-empty");
    let p = distance_profile(top)?;
    let rows: Vec<BcfRow> = ns
        .iter()
        .map(|&n| {
            let ln = (n as f64).ln();
            let (v, o) = (p.vn[n - 1], p.optimal[n - 1]);
            BcfRow { n, d2_vn: v, d2_optimal: o, vn_scaled: v * ln, optimal_scaled: o * ln }
        })
        .collect();
    let optimal_decreasing = rows.windows(2).all(|w| w[1].optimal_scaled <= w[0].optimal_scaled);
    Ok(BcfReport {
        constant: bcf_constant(),
        rows,
        optimal_decreasing,
        note: "asymptotic regime is far beyond N ≤ 2000; trend only".into(),
    })
}
