use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};

use super::alambda::{a_lambda, ALambdaConfig};
use crate::cotangent::C0Table;
use crate::error::{invalid, Error, Result};
use crate::fast_eval::c0_fast_value;
use crate::numtheory::arith::{gcd, mod_inverse};
use crate::sampling::{jackknife, run_shards, DEFAULT_SHARDS};
use crate::summation::Neumaier;
use crate::EULER_GAMMA;

/// Denominator of the sampling grid, the Mersenne prime `2^61 − 1`.
pub const GRID_PRIME: u64 = (1 << 61) - 1;

/// Mixture weight of the uniform component in the importance sampler.
const UNIFORM_WEIGHT: f64 = 0.2;
const MAX_ABS_ORDER: f64 = 20.0;
const NOISY: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    /// `H_k = ∫ (g/π)^{2k}`.
    H,
    /// `E_k = H_k/(2k + 1)`.
    E,
    /// `∫ |g|^K / Γ(K + 1)`.
    AbsRatio,
}

impl MomentKind {
    fn label(self) -> &'static str {
        match self {
            MomentKind::H => "H",
            MomentKind::E => "E",
            MomentKind::AbsRatio => "abs_ratio",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub kind: MomentKind,
    pub order: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub entries: Vec<MomentEntry>,
    pub shards: usize,
    pub warnings: Vec<String>,
}

impl MomentTable {
    pub fn get(&self, kind: MomentKind, order: f64) -> Option<&MomentEntry> {
        self.entries.iter().find(|e| e.kind == kind && e.order == order)
    }

    /// Columns `moment,k,estimate,stderr,n_samples,seed`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("moment,k,estimate,stderr,n_samples,seed\n");
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{},{},{:.16e},{:.16e},{},{}",
                e.kind.label(),
                e.order,
                e.estimate,
                e.stderr,
                e.samples,
                e.seed
            );
        }
        s
    }
}

/// Point of stratum `i` out of `n`, uniform inside `[i/n, (i+1)/n)`.
fn stratum_point<R: Rng>(i: u64, n: u64, rng: &mut R) -> f64 {
    (i as f64 + rng.random::<f64>()) / n as f64
}

fn grid_residue(x: f64) -> u64 {
    ((x * GRID_PRIME as f64) as u64).clamp(1, GRID_PRIME - 1)
}

/// `g(ȳ/q)/π = c₀(y/q)/q` on the grid `q = 2^61 − 1`.
///
/// Since `y ↦ ȳ` permutes the residues, a uniform `y` gives a uniform point
/// `ȳ/q` of the grid.
fn g_over_pi_at(y: u64) -> f64 {
    c0_fast_value(y, GRID_PRIME) / GRID_PRIME as f64
}

/// `g` at the grid point nearest below `x`, through the inverse residue.
fn g_near(x_residue: u64) -> f64 {
    let inv = mod_inverse(x_residue, GRID_PRIME).expect("grid modulus is prime");
    PI * g_over_pi_at(inv)
}

/// Runs `samples` stratified draws of `g/π` split over the shards; each shard
/// folds its values through `fold` into a vector of sums.
fn stratified<F>(samples: u64, seed: u64, width: usize, fold: F) -> Vec<Vec<f64>>
where
    F: Fn(f64, &mut [Neumaier]) + Sync,
{
    let shards = DEFAULT_SHARDS as u64;
    run_shards(seed, DEFAULT_SHARDS, |s, rng| {
        let mut acc = vec![Neumaier::new(); width];
        let mut i = s as u64;
        while i < samples {
            let x = stratum_point(i, samples, rng);
            fold(g_over_pi_at(grid_residue(x)), &mut acc);
            i += shards;
        }
        acc.iter().map(Neumaier::value).collect()
    })
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 * DEFAULT_SHARDS as u64 {
        return Err(invalid("samples", "need at least two per shard"));
    }
    Ok(())
}

/// Monte Carlo estimates of `H_k` and `E_k` for `k ≤ k_max`.
///
/// The unit interval is cut into `samples` equal strata with one point each;
/// `g` is evaluated exactly at the nearest point of the grid `ℤ/(2^61 − 1)`.
/// Errors come from a jackknife over the shards.
pub fn moments(k_max: u32, samples: u64, seed: u64) -> Result<MomentTable> {
    if k_max < 1 {
        return Err(invalid("k_max", "must be at least 1"));
    }
    check_samples(samples)?;
    let km = k_max as usize;
    let groups = stratified(samples, seed, km + 1, |v, acc| {
        let v2 = v * v;
        let mut p = 1.0;
        acc[0].add(1.0);
        for a in acc.iter_mut().skip(1) {
            p *= v2;
            a.add(p);
        }
    });
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for k in 1..=km {
        let (h, se) = jackknife(&groups, |s| s[k] / s[0]);
        if !h.is_finite() {
            return Err(Error::NotConverged(format!("H_{k} is not finite")));
        }
        if se > NOISY * h {
            warnings.push(format!("H_{k}: relative standard error {:.3}", se / h));
        }
        entries.push(MomentEntry { kind: MomentKind::H, order: k as f64, estimate: h, stderr: se, samples, seed });
    }
    for k in 1..=km {
        let h = entries[k - 1];
        let d = 2.0 * k as f64 + 1.0;
        entries.push(MomentEntry { kind: MomentKind::E, estimate: h.estimate / d, stderr: h.stderr / d, ..h });
    }
    Ok(MomentTable { entries, shards: DEFAULT_SHARDS, warnings })
}

/// `π^{2k}H_k/Γ(2k + 1)` for each `k` in the table, with its extremes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaBounds {
    pub ratios: Vec<(u32, f64)>,
    pub c1: f64,
    pub c2: f64,
}

pub fn gamma_ratio_bounds(table: &MomentTable) -> Result<GammaBounds> {
    let ratios: Vec<(u32, f64)> = table
        .entries
        .iter()
        .filter(|e| e.kind == MomentKind::H)
        .map(|e| {
            let k = e.order as u32;
            (k, PI.powi(2 * k as i32) * e.estimate / gamma(2.0 * k as f64 + 1.0))
        })
        .collect();
    if ratios.is_empty() {
        return Err(invalid("table", "no H_k entries"));
    }
    let c1 = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let c2 = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(GammaBounds { ratios, c1, c2 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsMomentReport {
    pub table: MomentTable,
    /// `e^γ/π`.
    pub target: f64,
    /// `2e^{−A(1)}` with `A(1)` by quadrature.
    pub from_a_one: f64,
    pub consistency_defect: f64,
}

/// `l^K/Γ(K + 1)` with `l = log(1/x)`, a probability density in `x ∈ (0, 1)`.
fn log_density(l: f64, k: f64, ln_gamma_k1: f64) -> f64 {
    if l <= 0.0 {
        return 0.0;
    }
    (k * l.ln() - ln_gamma_k1).exp()
}

/// `∫|g|^K dx / Γ(K + 1)` for each `K`, by importance sampling.
///
/// Points are drawn from `ρ + (1 − ρ)/2·(h(x) + h(1 − x))` with
/// `h(x) = log(1/x)^K/Γ(K + 1)`, which follows the logarithmic growth of `g`
/// at the ends of the interval; `x = e^{−Y}` with `Y ~ Gamma(K + 1, 1)` samples
/// `h` exactly.
pub fn abs_moment_check(ks: &[f64], samples: u64, seed: u64) -> Result<AbsMomentReport> {
    check_samples(samples)?;
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for (j, &k) in ks.iter().enumerate() {
        if !(k > 0.0 && k <= MAX_ABS_ORDER) {
            return Err(Error::Domain { value: k, domain: "0 < K ≤ 20" });
        }
        let dist = Gamma::new(k + 1.0, 1.0).map_err(|e| invalid("K", &e.to_string()))?;
        let lg = ln_gamma(k + 1.0);
        let shards = DEFAULT_SHARDS as u64;
        let stream = seed.wrapping_add((j as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let groups = run_shards(stream, DEFAULT_SHARDS, |s, rng| {
            let n = samples / shards + u64::from((s as u64) < samples % shards);
            let mut acc = Neumaier::new();
            for _ in 0..n {
                let (residue, t) = if rng.random::<f64>() < UNIFORM_WEIGHT {
                    let x: f64 = rng.random();
                    (grid_residue(x), x.min(1.0 - x))
                } else {
                    let t = (-dist.sample(rng)).exp();
                    let r = grid_residue(t);
                    (if rng.random::<bool>() { GRID_PRIME - r } else { r }, t)
                };
                let p = UNIFORM_WEIGHT
                    + (1.0 - UNIFORM_WEIGHT) / 2.0 * (log_density(-t.ln(), k, lg) + log_density(-(-t).ln_1p(), k, lg));
                acc.add(g_near(residue).abs().powf(k) / p);
            }
            vec![acc.value(), n as f64]
        });
        let (m, se) = jackknife(&groups, |s| s[0] / s[1]);
        let norm = gamma(k + 1.0);
        let (ratio, err) = (m / norm, se / norm);
        if err > NOISY * ratio || k > 12.0 {
            warnings.push(format!("K = {k}: relative standard error {:.3}", err / ratio));
        }
        entries.push(MomentEntry { kind: MomentKind::AbsRatio, order: k, estimate: ratio, stderr: err, samples, seed: stream });
    }
    let a = a_lambda(1.0, &ALambdaConfig::default())?;
    let target = EULER_GAMMA.exp() / PI;
    let from_a_one = 2.0 * (-a.value).exp();
    Ok(AbsMomentReport {
        table: MomentTable { entries, shards: DEFAULT_SHARDS, warnings },
        target,
        from_a_one,
        consistency_defect: (from_a_one - target).abs(),
    })
}

/// Empirical distribution function of `g` on a grid of `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdf {
    pub z: Vec<f64>,
    pub f: Vec<f64>,
    /// Dvoretzky–Kiefer–Wolfowitz half-width at 95% confidence.
    pub band: f64,
    /// Largest fraction of samples sharing one value.
    pub max_atom: f64,
    pub samples: u64,
    pub seed: u64,
}

impl EmpiricalCdf {
    /// Columns `z,F,lower,upper,n_samples,seed`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("z,F,lower,upper,n_samples,seed\n");
        for (z, f) in self.z.iter().zip(&self.f) {
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                z,
                f,
                (f - self.band).max(0.0),
                (f + self.band).min(1.0),
                self.samples,
                self.seed
            );
        }
        s
    }
}

pub fn distribution_f(z_grid: &[f64], samples: u64, seed: u64) -> Result<EmpiricalCdf> {
    check_samples(samples)?;
    if z_grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(invalid("z_grid", "must be sorted"));
    }
    let shards = DEFAULT_SHARDS as u64;
    let mut values: Vec<f64> = run_shards(seed, DEFAULT_SHARDS, |s, rng| {
        let mut out = Vec::new();
        let mut i = s as u64;
        while i < samples {
            out.push(PI * g_over_pi_at(grid_residue(stratum_point(i, samples, rng))));
            i += shards;
        }
        out
    })
    .concat();
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    let f = z_grid.iter().map(|&z| values.partition_point(|&v| v <= z) as f64 / n).collect();
    let mut max_atom = 0usize;
    for run in values.chunk_by(|a, b| a == b) {
        max_atom = max_atom.max(run.len());
    }
    Ok(EmpiricalCdf {
        z: z_grid.to_vec(),
        f,
        band: ((2.0f64 / 0.05).ln() / (2.0 * n)).sqrt(),
        max_atom: max_atom as f64 / n,
        samples,
        seed,
    })
}

/// Moments of `c₀(r/b)` over `A₀b ≤ r ≤ A₁b` against the limiting measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripRow {
    pub k: u32,
    /// `Σ (c₀/b)^{2k} / φ(b)`.
    pub even: f64,
    /// `H_k(A₁ − A₀)`.
    pub even_reference: f64,
    pub even_ratio: f64,
    /// `Σ (c₀/b)^{2k−1} / φ(b)`.
    pub odd: f64,
    /// `|odd| / even^{(2k−1)/(2k)}`.
    pub odd_ratio: f64,
    /// `Σ Q^{2k} / (b^{4k}φ(b))`.
    pub q_even: f64,
    /// `E_k(A₁^{2k+1} − A₀^{2k+1})`.
    pub q_reference: f64,
    pub q_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripReport {
    pub b: u64,
    pub a0: f64,
    pub a1: f64,
    pub fractions: usize,
    pub rows: Vec<StripRow>,
}

impl StripReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,even,even_reference,even_ratio,odd,odd_ratio,q_even,q_reference,q_ratio\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.k, r.even, r.even_reference, r.even_ratio, r.odd, r.odd_ratio, r.q_even, r.q_reference, r.q_ratio
            );
        }
        s
    }
}

/// Strip moments for `k = 1..=h.len()`, with `h[k−1]` the reference `H_k`.
///
/// `Q(r/b) = c₀(1/b) − r·c₀(r/b)`.
pub fn strip_moments(b: u64, a0: f64, a1: f64, h: &[f64]) -> Result<StripReport> {
    if b < 3 {
        return Err(Error::DenominatorTooSmall { b, min: 3 });
    }
    if !(0.0 < a0 && a0 < a1 && a1 <= 1.0) {
        return Err(invalid("strip", "need 0 < A0 < A1 ≤ 1"));
    }
    if h.is_empty() {
        return Err(invalid("h", "at least one reference moment"));
    }
    let bf = b as f64;
    let lo = (a0 * bf).ceil() as u64;
    let hi = ((a1 * bf).floor() as u64).min(b - 1);
    let rs: Vec<u64> = (lo.max(1)..=hi).filter(|&r| gcd(r, b) == 1).collect();
    if rs.is_empty() {
        return Err(Error::EmptyStrip { lo: a0, hi: a1 });
    }
    let table = C0Table::new(b);
    let c1 = table.c0(1);
    let vals: Vec<(f64, f64)> = rs
        .par_iter()
        .map(|&r| {
            let c = table.c0(r);
            (c / bf, (c1 - r as f64 * c) / (bf * bf))
        })
        .collect();
    let phi = crate::numtheory::arith::euler_phi(b) as f64;
    let rows = h
        .iter()
        .enumerate()
        .map(|(i, &hk)| {
            let k = i as i32 + 1;
            let (mut even, mut odd, mut q) = (Neumaier::new(), Neumaier::new(), Neumaier::new());
            for &(c, qn) in &vals {
                even.add(c.powi(2 * k));
                odd.add(c.powi(2 * k - 1));
                q.add(qn.powi(2 * k));
            }
            let (even, odd, q_even) = (even.value() / phi, odd.value() / phi, q.value() / phi);
            let even_reference = hk * (a1 - a0);
            let q_reference = hk / (2 * k + 1) as f64 * (a1.powi(2 * k + 1) - a0.powi(2 * k + 1));
            StripRow {
                k: k as u32,
                even,
                even_reference,
                even_ratio: even / even_reference,
                odd,
                odd_ratio: odd.abs() / even.powf((2 * k - 1) as f64 / (2 * k) as f64),
                q_even,
                q_reference,
                q_ratio: q_even / q_reference,
            }
        })
        .collect();
    Ok(StripReport { b, a0, a1, fractions: rs.len(), rows })
}
