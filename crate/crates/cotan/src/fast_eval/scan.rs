//! Maxima of `|c₀(r/b)|` over short strips of numerators, and the census of
//! large kernel values along continued-fraction chains.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fast::c0_fast;
use super::kernel::reciprocity_kernel;
use crate::cotangent::C0Table;
use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::{gcd, mod_inverse};
use crate::numtheory::cf::continued_fraction;
use crate::numtheory::fraction::ReducedFraction;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxScanResult {
    pub b: u64,
    pub c: f64,
    pub a0: f64,
    /// `Δ = b^{−C}`.
    pub delta: f64,
    pub r_star: u64,
    /// `|c₀(r*/b)|` from the naive sum.
    pub m: f64,
    /// Coprime numerators in the strip.
    pub strip_len: u64,
    /// `m / ((1/π)·b·log b)`, the observed constant `D`.
    pub observed_d: f64,
    /// Numerators whose fast value could not be ruled out and were summed naively.
    pub confirmed: u64,
    pub omega: Option<f64>,
    /// `N(b, Δ, Ω)`: strip numerators with `r̄ ≤ Ωb`.
    pub n_count: Option<u64>,
}

impl MaxScanResult {
    /// `M − (D/π)·b·log b`.
    pub fn margin(&self, d: f64) -> f64 {
        let b = self.b as f64;
        self.m - d / PI * b * b.ln()
    }
}

fn strip(b: u64, c: f64, a0: f64) -> Result<(f64, u64, u64)> {
    if !(c > 0.0 && c < 0.5) {
        return Err(invalid("C", "must lie in (0, 1/2)"));
    }
    if !(a0 > 0.0 && a0 < 1.0) {
        return Err(invalid("A0", "must lie in (0, 1)"));
    }
    if b < 2 {
        return Err(Error::DenominatorTooSmall { b, min: 2 });
    }
    let bf = b as f64;
    let delta = bf.powf(-c);
    let (lo, hi) = (a0 * bf, (a0 + delta) * bf);
    if delta * bf < 1.0 {
        return Err(Error::EmptyStrip { lo, hi });
    }
    let first = lo.ceil() as u64;
    let end = (hi.ceil() as u64).min(b);
    if (first..end).all(|r| gcd(r, b) != 1) {
        return Err(Error::EmptyStrip { lo, hi });
    }
    Ok((delta, first.max(1), end))
}

fn omega_count(b: u64, rs: &[u64], omega: Option<f64>) -> Result<Option<u64>> {
    let Some(w) = omega else { return Ok(None) };
    if !(w > 0.0) {
        return Err(invalid("Omega", "must be positive"));
    }
    let cap = w * b as f64;
    let mut n = 0;
    for &r in rs {
        if mod_inverse(r, b)? as f64 <= cap {
            n += 1;
        }
    }
    Ok(Some(n))
}

fn report(b: u64, c: f64, a0: f64, delta: f64, best: (u64, f64), rs: &[u64], confirmed: u64, omega: Option<f64>) -> Result<MaxScanResult> {
    let bf = b as f64;
    Ok(MaxScanResult {
        b,
        c,
        a0,
        delta,
        r_star: best.0,
        m: best.1,
        strip_len: rs.len() as u64,
        observed_d: best.1 / (bf * bf.ln() / PI),
        confirmed,
        omega,
        n_count: omega_count(b, rs, omega)?,
    })
}

/// `M(b, C, A₀) = max |c₀(r/b)|` over coprime `r ∈ [A₀b, (A₀ + b^{−C})b)`.
///
/// Every numerator is evaluated on the fast path; those whose interval
/// overlaps the best lower bound are re-summed naively and the naive maximum
/// is returned.
pub fn max_scan(b: u64, c: f64, a0: f64, omega: Option<f64>) -> Result<MaxScanResult> {
    let (delta, first, end) = strip(b, c, a0)?;
    let rs: Vec<u64> = (first..end).filter(|&r| gcd(r, b) == 1).collect();
    let fast: Vec<(u64, f64, f64)> = rs
        .par_iter()
        .map(|&r| {
            let v = c0_fast(ReducedFraction::coprime(r, b)?)?;
            Ok((r, v.value.abs(), v.error_bound))
        })
        .collect::<Result<_>>()?;
    let floor = fast.iter().map(|&(_, v, e)| v - e).fold(f64::NEG_INFINITY, f64::max);
    let candidates: Vec<u64> = fast.iter().filter(|&&(_, v, e)| v + e >= floor).map(|&(r, _, _)| r).collect();
    let table = C0Table::new(b);
    let best = candidates
        .iter()
        .map(|&r| (r, table.c0(r).abs()))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    report(b, c, a0, delta, best, &rs, candidates.len() as u64, omega)
}

/// [`max_scan`] with every numerator summed naively.
pub fn max_scan_naive(b: u64, c: f64, a0: f64, omega: Option<f64>) -> Result<MaxScanResult> {
    let (delta, first, end) = strip(b, c, a0)?;
    let rs: Vec<u64> = (first..end).filter(|&r| gcd(r, b) == 1).collect();
    let table = C0Table::new(b);
    let best = rs
        .iter()
        .map(|&r| (r, table.c0(r).abs()))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    report(b, c, a0, delta, best, &rs, rs.len() as u64, omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusThreshold {
    /// `log log b`.
    LogLog,
    /// `ε·log b`.
    EpsLog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub b: u64,
    pub kind: CensusThreshold,
    pub epsilon: f64,
    pub threshold: f64,
    /// `histogram[k]` = number of fractions with exactly `k` large indices.
    pub histogram: Vec<u64>,
    pub max_count: usize,
    /// Largest `(1/v_l)|F(v_{l−1}/v_l)|` seen.
    pub max_quantity: f64,
    pub fractions: u64,
}

/// For every coprime `r`, walks the convergents `u_l/v_l` of `r̄/b` and counts
/// indices with `(1/v_l)·|F(v_{l−1}/v_l)| ≥ threshold`, `F` the reciprocity kernel.
pub fn cf_growth_census(b: u64, kind: CensusThreshold, epsilon: f64) -> Result<CensusReport> {
    if b < 100 {
        return Err(Error::DenominatorTooSmall { b, min: 100 });
    }
    let lb = (b as f64).ln();
    let threshold = match kind {
        CensusThreshold::LogLog => lb.ln(),
        CensusThreshold::EpsLog => {
            if !(epsilon > 0.0) {
                return Err(invalid("epsilon", "must be positive"));
            }
            epsilon * lb
        }
    };
    let per: Vec<(usize, f64)> = (1..b)
        .into_par_iter()
        .filter(|&r| gcd(r, b) == 1)
        .map(|r| {
            let inv = mod_inverse(r, b)?;
            let cf = continued_fraction(ReducedFraction::coprime(inv, b)?);
            let mut count = 0;
            let mut top: f64 = 0.0;
            for w in cf.convergents.windows(2) {
                let (v_prev, v) = (w[0].1, w[1].1);
                let q = reciprocity_kernel(v_prev as f64 / v as f64)?.value.abs() / v as f64;
                top = top.max(q);
                if q >= threshold {
                    count += 1;
                }
            }
            Ok((count, top))
        })
        .collect::<Result<_>>()?;
    let max_count = per.iter().map(|p| p.0).max().unwrap_or(0);
    let mut histogram = vec![0u64; max_count + 1];
    for p in &per {
        histogram[p.0] += 1;
    }
    Ok(CensusReport {
        b,
        kind,
        epsilon,
        threshold,
        histogram,
        max_count,
        max_quantity: per.iter().map(|p| p.1).fold(0.0, f64::max),
        fractions: per.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::arith::euler_phi;

    #[test]
    fn fast_scan_matches_naive_scan() {
        for b in [1009u64, 2003, 4999] {
            for (c, a0) in [(0.2, 0.3), (0.4, 0.05), (0.3, 0.7)] {
                let f = max_scan(b, c, a0, Some(0.5)).unwrap();
                let n = max_scan_naive(b, c, a0, Some(0.5)).unwrap();
                assert_eq!(f.r_star, n.r_star);
                assert_eq!(f.m, n.m);
                assert_eq!(f.n_count, n.n_count);
                assert!(f.confirmed <= n.confirmed);
                let lo = a0 * b as f64;
                assert!(lo <= f.r_star as f64 && (f.r_star as f64) < (a0 + f.delta) * b as f64);
            }
        }
    }

    #[test]
    fn omega_counts() {
        let b = 10007;
        let full = max_scan(b, 0.4, 0.3, Some(1.0)).unwrap();
        assert_eq!(full.n_count, Some(full.strip_len));
        let mut last = 0;
        for w in [0.01, 0.1, 0.3, 0.6, 1.0] {
            let n = max_scan(b, 0.4, 0.3, Some(w)).unwrap().n_count.unwrap();
            assert!(n >= last);
            last = n;
        }
        assert_eq!(max_scan(b, 0.4, 0.3, None).unwrap().n_count, None);
    }

    #[test]
    fn strip_validation() {
        assert!(max_scan(1009, 0.6, 0.3, None).is_err());
        assert!(max_scan(1009, 0.4, 1.3, None).is_err());
        // [1.1, 6.77) holds no numerator coprime to 30
        assert!(matches!(max_scan(30, 0.49, 1.1 / 30.0, None), Err(Error::EmptyStrip { .. })));
    }

    #[test]
    fn census_counts_cover_all_fractions() {
        let r = cf_growth_census(101, CensusThreshold::LogLog, 0.0).unwrap();
        assert_eq!(r.fractions, euler_phi(101));
        assert_eq!(r.histogram.iter().sum::<u64>(), 100);
        assert!(cf_growth_census(50, CensusThreshold::LogLog, 0.0).is_err());
        assert!(cf_growth_census(101, CensusThreshold::EpsLog, 0.0).is_err());
        let low = cf_growth_census(101, CensusThreshold::EpsLog, 0.01).unwrap();
        assert!(low.max_count >= 1);
    }
}
