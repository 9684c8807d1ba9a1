use super::{cot_pi_frac, SumValue};
use crate::error::Result;
use crate::numtheory::arith::mul_mod;
use crate::numtheory::fraction::ReducedFraction;
use crate::summation::Neumaier;

/// `c₀(r/b) = −Σ_{m=1}^{b−1} (m/b)·cot(πmr/b)`, summed in `O(b)`.
///
/// Terms `m` and `b − m` are paired first: their cotangents are opposite, so
/// the pair contributes `((b − 2m)/b)·cot(πmr/b)`.
pub fn c0_naive(x: ReducedFraction) -> Result<SumValue> {
    x.require_denominator(2)?;
    let (r, b) = (x.residue(), x.b());
    Ok(SumValue::naive(paired_sum(b, |m| cot_pi_frac(mul_mod(m, r, b), b))))
}

/// `Σ_{1 ≤ m < b/2} ((b − 2m)/b)·cot_m`, visiting `m` in increasing order.
#[inline]
fn paired_sum<F: FnMut(u64) -> f64>(b: u64, mut cot_of: F) -> f64 {
    let bf = b as f64;
    let mut acc = Neumaier::new();
    for m in 1..=(b - 1) / 2 {
        acc.add((b - 2 * m) as f64 / bf * cot_of(m));
    }
    acc.value()
}

/// Cotangent table for one denominator. Evaluates `c₀(r/b)` and `Q(r/b)`
/// for many `r` with exactly the rounding of the per-call functions.
pub struct C0Table {
    b: u64,
    cot: Vec<f64>,
}

impl C0Table {
    pub fn new(b: u64) -> Self {
        assert!(b >= 2, "denominator must be at least 2");
        let cot = (0..b).map(|k| cot_pi_frac(k, b)).collect();
        Self { b, cot }
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn cot(&self, k: u64) -> f64 {
        self.cot[(k % self.b) as usize]
    }

    /// `c₀(r/b)` for `r` coprime to `b`.
    pub fn c0(&self, r: u64) -> f64 {
        let b = self.b;
        let r = r % b;
        let mut k = 0u64;
        paired_sum(b, |_| {
            k += r;
            if k >= b {
                k -= b;
            }
            self.cot[k as usize]
        })
    }
}

/// `Q(r/b) = Σ_{m=1}^{b−1} cot(πmr/b)·⌊rm/b⌋`.
///
/// For coprime `r`, `⌊r(b−m)/b⌋ = r − 1 − ⌊rm/b⌋`, so the pair `(m, b−m)`
/// contributes `(2⌊rm/b⌋ − r + 1)·cot(πmr/b)`.
pub fn q_sum(x: ReducedFraction) -> Result<SumValue> {
    x.require_denominator(2)?;
    let (r, b) = (x.r(), x.b());
    let mut acc = Neumaier::new();
    for m in 1..=(b - 1) / 2 {
        let prod = r as u128 * m as u128;
        let fl = (prod / b as u128) as f64;
        let k = (prod % b as u128) as u64;
        acc.add((2.0 * fl - r as f64 + 1.0) * cot_pi_frac(k, b));
    }
    Ok(SumValue::naive(acc.value()))
}

/// `c₀(r/b)` through `(c₀(1/b) − Q(r/b))/r`.
pub fn c0_via_q(x: ReducedFraction) -> Result<SumValue> {
    x.require_denominator(2)?;
    let one = ReducedFraction::new(1, x.b())?;
    let c1 = c0_naive(one)?.value;
    let q = q_sum(x)?.value;
    Ok(SumValue::naive((c1 - q) / x.r() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::fraction::coprime_residues;
    use std::f64::consts::PI;

    fn frac(r: u64, b: u64) -> ReducedFraction {
        ReducedFraction::coprime(r, b).unwrap()
    }

    /// The defining sum, term by term, without pairing or reduction.
    fn c0_literal(r: u64, b: u64) -> f64 {
        -(1..b).map(|m| m as f64 / b as f64 / (PI * (m * r) as f64 / b as f64).tan()).sum::<f64>()
    }

    #[test]
    fn examples() {
        assert_eq!(c0_naive(frac(1, 2)).unwrap().value, 0.0);
        let third = 1.0 / (3.0 * 3f64.sqrt());
        assert!((c0_naive(frac(1, 3)).unwrap().value - third).abs() < 1e-15);
        assert!((c0_naive(frac(2, 3)).unwrap().value + third).abs() < 1e-15);
        assert!(c0_naive(ReducedFraction::new(3, 1).unwrap()).is_err());
        assert_eq!(c0_naive(frac(1, 3)).unwrap().error_bound, 0.0);
    }

    #[test]
    fn matches_literal_definition() {
        for b in 2..80u64 {
            for r in coprime_residues(b) {
                let got = c0_naive(frac(r, b)).unwrap().value;
                assert!((got - c0_literal(r, b)).abs() < 1e-11 * b as f64, "{r}/{b}");
            }
        }
    }

    #[test]
    fn oddness_is_exact() {
        for b in 2..=500u64 {
            let table = C0Table::new(b);
            for r in coprime_residues(b) {
                let a = c0_naive(frac(r, b)).unwrap().value;
                let c = c0_naive(frac(b - r, b)).unwrap().value;
                assert_eq!(a, -c, "{r}/{b}");
                assert_eq!(table.c0(r), a);
            }
        }
    }

    #[test]
    fn cotangents_sum_to_zero() {
        for b in [10u64, 97, 1000, 4096, 9973, 10_000] {
            for r in [1u64, 3, 7] {
                if crate::numtheory::arith::gcd(r, b) != 1 {
                    continue;
                }
                let s: f64 = (1..b).map(|m| cot_pi_frac(m * r, b)).sum();
                assert!(s.abs() < 1e-10 * b as f64);
            }
        }
    }

    #[test]
    fn q_examples_and_identity() {
        for b in 2..40 {
            assert_eq!(q_sum(frac(1, b)).unwrap().value, 0.0);
        }
        assert!((q_sum(frac(2, 3)).unwrap().value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let v = c0_via_q(frac(2, 3)).unwrap().value;
        assert!((v + 1.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        for b in 2..=300u64 {
            for r in coprime_residues(b) {
                let a = c0_naive(frac(r, b)).unwrap().value;
                let q = c0_via_q(frac(r, b)).unwrap().value;
                assert!((a - q).abs() <= 1e-9 * a.abs().max(1.0), "{r}/{b}");
            }
        }
    }

    #[test]
    fn q_matches_unpaired_sum() {
        for b in 2..60u64 {
            for r in coprime_residues(b) {
                let direct: f64 = (1..b).map(|m| cot_pi_frac(m * r, b) * ((r * m) / b) as f64).sum();
                assert!((q_sum(frac(r, b)).unwrap().value - direct).abs() < 1e-10 * b as f64);
            }
        }
    }
}
