use serde::{Deserialize, Serialize};

use super::{c0_naive, cot_pi_frac, SumValue};
use crate::error::Result;
use crate::numtheory::arith::mul_mod;
use crate::numtheory::fraction::{coprime_residues, ReducedFraction};
use crate::summation::Neumaier;

/// `V(r/b) = Σ_{m=1}^{b−1} {mr/b}·cot(πm/b)`.
///
/// The pair `(m, b−m)` has fractional parts summing to 1 and opposite
/// cotangents, giving `(2{mr/b} − 1)·cot(πm/b)`.
pub fn vasyunin(x: ReducedFraction) -> Result<SumValue> {
    x.require_denominator(2)?;
    Ok(SumValue::naive(vasyunin_value(x.residue(), x.b())))
}

/// `V(r/b)` for any `b ≥ 1` (`V(r/1) = 0`); `r` must be coprime to `b`.
pub fn vasyunin_value(r: u64, b: u64) -> f64 {
    if b < 2 {
        return 0.0;
    }
    let bf = b as f64;
    let mut acc = Neumaier::new();
    for m in 1..=(b - 1) / 2 {
        let k = mul_mod(m, r, b);
        acc.add((2.0 * k as f64 - bf) / bf * cot_pi_frac(m, b));
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub max_defect: f64,
    pub worst: Option<(u64, u64)>,
}

impl IdentityReport {
    pub(crate) fn new() -> Self {
        Self { checked: 0, max_defect: 0.0, worst: None }
    }

    pub(crate) fn record(&mut self, r: u64, b: u64, defect: f64) {
        self.checked += 1;
        if defect > self.max_defect || (defect.is_nan() && !self.max_defect.is_nan()) {
            self.max_defect = defect;
            self.worst = Some((r, b));
        }
    }
}

/// Checks `V(r/b) = −c₀(r̄/b)` on every reduced fraction with `2 ≤ b ≤ b_max`.
pub fn vasyunin_c0_identity_check(b_max: u64) -> Result<IdentityReport> {
    let mut report = IdentityReport::new();
    for b in 2..=b_max {
        for r in coprime_residues(b) {
            let x = ReducedFraction::coprime(r, b)?;
            let v = vasyunin(x)?.value;
            let inv = ReducedFraction::coprime(x.inverse()?, b)?;
            let c = c0_naive(inv)?.value;
            report.record(r, b, (v + c).abs());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v_literal(r: u64, b: u64) -> f64 {
        (1..b).map(|m| ((m * r) % b) as f64 / b as f64 / (PI * m as f64 / b as f64).tan()).sum()
    }

    #[test]
    fn examples() {
        let third = 1.0 / (3.0 * 3f64.sqrt());
        assert_eq!(vasyunin(ReducedFraction::coprime(1, 2).unwrap()).unwrap().value, 0.0);
        assert!((vasyunin(ReducedFraction::coprime(1, 3).unwrap()).unwrap().value + third).abs() < 1e-15);
        assert!((vasyunin(ReducedFraction::coprime(2, 3).unwrap()).unwrap().value - third).abs() < 1e-15);
        for b in 2..60u64 {
            for r in coprime_residues(b) {
                assert!((vasyunin_value(r, b) - v_literal(r, b)).abs() < 1e-11 * b as f64);
            }
        }
    }

    #[test]
    fn identity_with_c0() {
        let r = vasyunin_c0_identity_check(2).unwrap();
        assert_eq!(r.max_defect, 0.0);
        assert!(vasyunin_c0_identity_check(3).unwrap().max_defect < 1e-12);
        let r = vasyunin_c0_identity_check(50).unwrap();
        assert_eq!(r.checked, 773);
        assert!(r.max_defect < 1e-10);
        assert!(vasyunin_c0_identity_check(200).unwrap().max_defect < 1e-10);
    }

    #[test]
    fn printed_kernel_breaks_the_identity() {
        // with cot(πmr/b) in place of cot(πm/b) the sum is even in r
        let printed = |r: u64, b: u64| -> f64 {
            (1..b).map(|m| ((m * r) % b) as f64 / b as f64 * cot_pi_frac(m * r, b)).sum()
        };
        assert!((printed(1, 3) - printed(2, 3)).abs() < 1e-15);
        let c = c0_naive(ReducedFraction::coprime(2, 3).unwrap()).unwrap().value;
        assert!((printed(2, 3) + c).abs() > 0.1);
    }
}
