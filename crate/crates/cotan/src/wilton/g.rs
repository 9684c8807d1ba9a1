use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cotangent::vasyunin_value;
use crate::error::{invalid, Error, Result};
use crate::fast_eval::{c0_fast, c0_fast_value};
use crate::numtheory::fraction::ReducedFraction;
use crate::summation::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GMethod {
    BlockSeries,
    Wilton,
    RationalVasyunin,
}

/// A value of `g(x) = Σ_{l≥1} (1 − 2{lx})/l`, or of the Wilton sum `𝒲`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GValue {
    pub x: f64,
    /// Set when the argument was an exact rational.
    pub rational: Option<ReducedFraction>,
    pub value: f64,
    pub method: GMethod,
    pub error_bound: f64,
}

fn partial_sums<F: Fn(u64) -> Option<f64>>(terms: u64, term: F) -> (f64, f64) {
    let mut acc = Neumaier::new();
    let half = terms / 2;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for l in 1..=terms {
        if let Some(t) = term(l) {
            acc.add(t);
        }
        if l >= half {
            let v = acc.value();
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (acc.value(), hi - lo)
}

/// Partial sum of `g` at a real `x ∈ (0, 1)` over `l ≤ terms`.
///
/// The error estimate is the oscillation of the partial sums over the last
/// half of the range.
pub fn g_series(x: f64, terms: u64) -> Result<GValue> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain { value: x, domain: "(0, 1)" });
    }
    if terms < 2 {
        return Err(invalid("terms", "must be at least 2"));
    }
    let (value, osc) = partial_sums(terms, |l| {
        let lx = l as f64 * x;
        Some((1.0 - 2.0 * (lx - lx.floor())) / l as f64)
    });
    Ok(GValue { x, rational: None, value, method: GMethod::BlockSeries, error_bound: osc })
}

/// Partial sum of `g` at `r/b`, omitting the terms with `b | l`.
///
/// The truncation point is rounded down to a whole number `K` of blocks of
/// length `b`. Each block of numerators sums to zero, so the omitted tail is
/// at most `Σ_j j·Σ_{k≥K} 1/(kb)² ≤ 1/K`.
pub fn g_series_rational(x: ReducedFraction, terms: u64) -> Result<GValue> {
    let (r, b) = (x.residue(), x.b());
    if b < 2 {
        return Ok(GValue { x: 0.0, rational: Some(x), value: 0.0, method: GMethod::BlockSeries, error_bound: 0.0 });
    }
    let blocks = (terms / b).max(1);
    let n = blocks * b;
    let (value, _) = partial_sums(n, |l| {
        let k = ((l as u128 * r as u128) % b as u128) as u64;
        if k == 0 {
            None
        } else {
            Some((b as f64 - 2.0 * k as f64) / (b as f64 * l as f64))
        }
    });
    Ok(GValue { x: x.to_f64(), rational: Some(x), value, method: GMethod::BlockSeries, error_bound: 1.0 / blocks as f64 })
}

/// `g(r/b) = (π/b)·c₀(r̄/b) = −(π/b)·V(r/b)` through the fast cotangent path.
pub fn g_rational(x: ReducedFraction) -> Result<GValue> {
    let b = x.b();
    if b < 2 {
        return Ok(GValue { x: 0.0, rational: Some(x), value: 0.0, method: GMethod::RationalVasyunin, error_bound: 0.0 });
    }
    let inv = ReducedFraction::coprime(x.inverse()?, b)?;
    let c = c0_fast(inv)?;
    let s = PI / b as f64;
    Ok(GValue {
        x: x.to_f64(),
        rational: Some(x),
        value: s * c.value,
        method: GMethod::RationalVasyunin,
        error_bound: s * c.error_bound,
    })
}

/// `g(r/b)` for `b ≥ 2`, `gcd(r, b) = 1`, unchecked. `r̄` must be supplied.
#[inline]
pub fn g_rational_value(r_inv: u64, b: u64) -> f64 {
    PI / b as f64 * c0_fast_value(r_inv, b)
}

/// `g` extended to all reals by `g(x) := g({x})`.
pub fn g_periodic(x: f64, terms: u64) -> Result<GValue> {
    let f = x - x.floor();
    let mut v = g_series(f, terms)?;
    v.x = x;
    Ok(v)
}

/// Result of [`calibrate_rational_g`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GCalibration {
    /// Mean of `b·g(r/b)/V(r/b)` over fractions with `V ≠ 0`.
    pub constant: f64,
    pub max_deviation: f64,
    pub fractions: usize,
}

/// Measures the constant `κ` in `g(r/b) = (κ/b)·V(r/b)` from the block series,
/// over `3 ≤ b ≤ b_max`. The expected value is `−π`.
pub fn calibrate_rational_g(b_max: u64, terms: u64) -> Result<GCalibration> {
    let mut ratios = Vec::new();
    for b in 3..=b_max {
        for r in crate::numtheory::fraction::coprime_residues(b) {
            let v = vasyunin_value(r, b);
            if v.abs() < 1e-3 {
                continue;
            }
            let g = g_series_rational(ReducedFraction::coprime(r, b)?, terms)?;
            ratios.push(b as f64 * g.value / v);
        }
    }
    if ratios.is_empty() {
        return Err(invalid("b_max", "no fraction with V ≠ 0"));
    }
    let constant = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max_deviation = ratios.iter().map(|r| (r - constant).abs()).fold(0.0, f64::max);
    Ok(GCalibration { constant, max_deviation, fractions: ratios.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::fraction::coprime_residues;

    #[test]
    fn rational_examples() {
        let third = ReducedFraction::new(1, 3).unwrap();
        let want = PI / (9.0 * 3f64.sqrt());
        let s = g_series_rational(third, 3_000_000).unwrap();
        assert!((s.value - want).abs() <= s.error_bound);
        let f = g_rational(third).unwrap();
        assert!((f.value - want).abs() <= f.error_bound + 1e-16);
        assert_eq!(g_series_rational(ReducedFraction::new(1, 2).unwrap(), 1000).unwrap().value, 0.0);
        assert_eq!(g_rational(ReducedFraction::new(1, 2).unwrap()).unwrap().value, 0.0);
    }

    #[test]
    fn fast_rational_g_matches_block_series() {
        for b in [5u64, 12, 31, 97] {
            for r in coprime_residues(b) {
                let x = ReducedFraction::coprime(r, b).unwrap();
                let s = g_series_rational(x, 2_000_000).unwrap();
                let f = g_rational(x).unwrap();
                assert!((s.value - f.value).abs() <= s.error_bound + f.error_bound, "{x}: {} vs {}", s.value, f.value);
                let inv = x.inverse().unwrap();
                assert!((g_rational_value(inv, b) - f.value).abs() <= f.error_bound);
            }
        }
    }

    #[test]
    fn calibration_constant_is_minus_pi() {
        let c = calibrate_rational_g(25, 500_000).unwrap();
        assert!((c.constant + PI).abs() < 1e-3, "{}", c.constant);
        assert!(c.max_deviation < 1e-2);
    }

    #[test]
    fn real_series_is_odd_and_periodic() {
        let x = 2f64.sqrt() - 1.0;
        let a = g_series(x, 200_000).unwrap();
        let b = g_series(1.0 - x, 200_000).unwrap();
        assert!((a.value + b.value).abs() < 1e-3);
        let p = g_periodic(x + 3.0, 200_000).unwrap();
        assert!((p.value - a.value).abs() < 1e-9);
        assert!(g_series(1.0, 10).is_err());
    }
}
