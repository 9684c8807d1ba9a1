use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::g::g_rational_value;
use crate::error::{invalid, Error, Result};
use crate::numtheory::arith::{gcd, mobius_range, mod_inverse};
use crate::summation::Neumaier;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "weights", rename_all = "snake_case")]
pub enum Weights {
    Flat,
    /// `1 − log n/log N`.
    LogTaper { n: u64 },
}

impl Weights {
    fn weight(self, n: u64) -> f64 {
        match self {
            Weights::Flat => 1.0,
            Weights::LogTaper { n: big } => 1.0 - (n as f64).ln() / (big as f64).ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusSum {
    pub b: u64,
    pub lo: u64,
    pub hi: u64,
    pub value: f64,
    /// Number of squarefree `n` in the interval.
    pub squarefree: u64,
    /// `(ηBb)^{0.95}`, the desk-scale cancellation envelope.
    pub envelope: f64,
}

/// `g(k/b)` for every residue `k`, each reduced to lowest terms first.
fn residue_table(b: u64) -> Result<Vec<f64>> {
    (0..b)
        .map(|k| {
            let d = gcd(k, b);
            let bb = b / d;
            if bb < 2 {
                return Ok(0.0);
            }
            Ok(g_rational_value(mod_inverse(k / d, bb)?, bb))
        })
        .collect()
}

/// `Σ_{Bb ≤ n ≤ (1+η)Bb} w(n)·μ(n)·g(n/b)`.
///
/// `g(n/b)` depends on `n mod b` only and is tabulated once. Fixed chunks of
/// the interval are summed independently and combined in order.
pub fn mobius_g_sum(b: u64, big_b: f64, eta: f64, weights: Weights) -> Result<MobiusSum> {
    if b < 1 {
        return Err(Error::DenominatorTooSmall { b, min: 1 });
    }
    if !(big_b > 0.0 && eta >= 0.0) {
        return Err(invalid("B, eta", "need B > 0 and η ≥ 0"));
    }
    if let Weights::LogTaper { n } = weights {
        if n < 2 {
            return Err(invalid("N", "taper needs N ≥ 2"));
        }
    }
    let start = big_b * b as f64;
    let lo = start.ceil() as u64;
    let hi = ((1.0 + eta) * start).floor() as u64;
    if lo > hi {
        return Err(Error::EmptyStrip { lo: start, hi: (1.0 + eta) * start });
    }
    let table = residue_table(b)?;
    let mu = mobius_range(lo, hi);
    let parts: Vec<(f64, u64)> = mu
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut acc = Neumaier::new();
            let mut sf = 0u64;
            for (i, &m) in chunk.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                sf += 1;
                let n = lo + (c * CHUNK + i) as u64;
                acc.add(m as f64 * weights.weight(n) * table[(n % b) as usize]);
            }
            (acc.value(), sf)
        })
        .collect();
    let mut total = Neumaier::new();
    for (v, _) in &parts {
        total.add(*v);
    }
    Ok(MobiusSum {
        b,
        lo,
        hi,
        value: total.value(),
        squarefree: parts.iter().map(|p| p.1).sum(),
        envelope: (eta * big_b * b as f64).powf(0.95),
    })
}

/// The constants `C`, `v₀`, `z₀` of the Möbius-sum power saving.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FinalConstants {
    /// Larger root of `2C − log C − 1 − 2log 2 = (log 2)/2`.
    pub c: f64,
    pub residual: f64,
    /// The other root, below `1/2`.
    pub smaller_root: f64,
    /// Required lower bound `(√5 + 1)/2` for `C`.
    pub constraint: f64,
    pub violates_constraint: bool,
    pub v0: f64,
    pub v0_residual: f64,
    pub z0: f64,
    pub z0_residual: f64,
}

fn c_equation(c: f64) -> f64 {
    2.0 * c - c.ln() - 1.0 - 2.0 * LN_2 - LN_2 / 2.0
}

/// Bisection on a sign change followed by Newton polishing.
fn root_between(mut a: f64, mut b: f64) -> Result<f64> {
    let (fa, fb) = (c_equation(a), c_equation(b));
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if c_equation(m).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..3 {
        x -= c_equation(x) / (2.0 - 1.0 / x);
    }
    Ok(x)
}

/// `v₀` from `v₀·(1 − (1 + 2log 2·(C + (log 2)/2)^{−1})^{−1} + 2 + (4/log 2)C) = 2`,
/// then `z₀ = 2 − (2 + (4/log 2)C)v₀`.
///
/// The equation for `C` is convex with its minimum at `C = 1/2`; the larger
/// root is taken. When it falls below `(√5 + 1)/2` the flag is set.
pub fn constants_final_theorem() -> Result<FinalConstants> {
    let c = root_between(0.5, 64.0)?;
    let smaller_root = root_between(1e-12, 0.5)?;
    let constraint = (5f64.sqrt() + 1.0) / 2.0;
    let slope = 2.0 + 4.0 / LN_2 * c;
    let factor = 1.0 - 1.0 / (1.0 + 2.0 * LN_2 / (c + LN_2 / 2.0)) + slope;
    let v0 = 2.0 / factor;
    let z0 = 2.0 - slope * v0;
    Ok(FinalConstants {
        c,
        residual: c_equation(c),
        smaller_root,
        constraint,
        violates_constraint: c < constraint,
        v0,
        v0_residual: v0 * factor - 2.0,
        z0,
        z0_residual: z0 - (2.0 - slope * v0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::arith::mobius;
    use crate::numtheory::fraction::ReducedFraction;
    use crate::wilton::g_series_rational;

    #[test]
    fn cancellation_at_desk_scale() {
        let b = 101u64;
        let s = mobius_g_sum(b, (b * b) as f64, 1.0, Weights::Flat).unwrap();
        assert!(s.value.abs() <= s.envelope, "{} > {}", s.value, s.envelope);
        assert!(s.squarefree > (s.hi - s.lo) / 2);
        let t = mobius_g_sum(b, (b * b) as f64, 1.0, Weights::LogTaper { n: 3 * b * b * b }).unwrap();
        assert!(t.value.is_finite() && t.value != s.value);
    }

    #[test]
    fn small_intervals() {
        // single term n = 30 = 2·3·5 with μ = −1
        let s = mobius_g_sum(7, 30.0 / 7.0, 0.0, Weights::Flat).unwrap();
        assert_eq!((s.lo, s.hi), (30, 30));
        let g = g_series_rational(ReducedFraction::new(30, 7).unwrap(), 2_000_000).unwrap();
        assert!((s.value + g.value).abs() <= g.error_bound);
        assert_eq!(mobius(30), -1);
        // 48, 49, 50 are all divisible by a square
        let z = mobius_g_sum(7, 48.0 / 7.0, 2.0 / 48.0, Weights::Flat).unwrap();
        assert_eq!((z.lo, z.hi, z.value, z.squarefree), (48, 50, 0.0, 0));
        assert!(mobius_g_sum(7, 30.2 / 7.0, 0.001, Weights::Flat).is_err());
    }

    #[test]
    fn reduced_residues_in_table() {
        let t = residue_table(12).unwrap();
        assert_eq!(t[0], 0.0);
        assert_eq!(t[6], 0.0);
        // 4/12 = 1/3
        let third = g_series_rational(ReducedFraction::new(1, 3).unwrap(), 3_000_000).unwrap();
        assert!((t[4] - third.value).abs() <= third.error_bound);
        assert!((t[8] + third.value).abs() <= third.error_bound);
    }

    #[test]
    fn final_constants() {
        let f = constants_final_theorem().unwrap();
        assert!(f.residual.abs() < 1e-12);
        assert!(c_equation(f.smaller_root).abs() < 1e-12 && f.smaller_root < 0.5);
        assert!((c_equation(1.0) + 0.7329).abs() < 1e-4);
        assert!(f.violates_constraint && f.c > 1.5 && f.c < f.constraint);
        assert!(f.v0_residual.abs() < 1e-12 && f.z0_residual.abs() < 1e-12);
    }
}
