//! Bernoulli numbers (convention `B₁ = −1/2`) and polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Exact `B₀ … B_max`, built once.
#[derive(Debug)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
    floats: Vec<f64>,
}

const TABLE_MAX: usize = 160;

impl BernoulliTable {
    fn build(max: usize) -> Self {
        // Σ_{k=0}^{n} C(n+1, k) B_k = 0
        let mut numbers: Vec<BigRational> = Vec::with_capacity(max + 1);
        numbers.push(BigRational::one());
        for n in 1..=max {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in numbers.iter().enumerate() {
                acc += bk * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            numbers.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        let floats = numbers.iter().map(|b| b.to_f64().unwrap_or(f64::NAN)).collect();
        Self { numbers, floats }
    }

    pub fn global() -> &'static Self {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::build(TABLE_MAX))
    }

    pub fn max_index(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn exact(&self, n: usize) -> &BigRational {
        &self.numbers[n]
    }

    pub fn float(&self, n: usize) -> f64 {
        self.floats[n]
    }

    /// `B_n(x) = Σ_k C(n,k) B_k x^{n−k}` in floating point.
    pub fn poly(&self, n: usize, x: f64) -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=n {
            acc += binom * self.floats[k] * x.powi((n - k) as i32);
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        acc
    }

    /// `B_n(x)` exactly at a rational point.
    pub fn poly_exact(&self, n: usize, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        let mut pow = BigRational::one();
        let powers: Vec<BigRational> = (0..=n)
            .map(|_| {
                let p = pow.clone();
                pow = &pow * x;
                p
            })
            .collect();
        for k in 0..=n {
            acc += &self.numbers[k] * BigRational::from_integer(binom.clone()) * &powers[n - k];
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
        acc
    }
}

pub fn bernoulli(n: usize) -> &'static BigRational {
    BernoulliTable::global().exact(n)
}

pub fn bernoulli_f64(n: usize) -> f64 {
    BernoulliTable::global().float(n)
}

pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    BernoulliTable::global().poly(n, x)
}

/// `ζ(−a, x) = −B_{a+1}(x)/(a+1)` for integer `a ≥ 0`.
pub fn hurwitz_zeta_neg(a: i64, x: f64) -> Result<f64> {
    if a < 0 {
        return Err(invalid("a", "the Bernoulli form needs a ≥ 0"));
    }
    let n = a as usize + 1;
    Ok(-bernoulli_poly(n, x) / n as f64)
}

/// `ζ(−a) = (−1)^a B_{a+1}/(a+1)` for integer `a ≥ 0`.
pub fn zeta_neg_int(a: usize) -> f64 {
    let sign = if a % 2 == 0 { 1.0 } else { -1.0 };
    sign * bernoulli_f64(a + 1) / (a + 1) as f64
}

/// `ζ(2m)` from the Bernoulli numbers.
pub fn zeta_even(m: usize) -> f64 {
    if m == 0 {
        return -0.5;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut fact = 1.0;
    for i in 1..=2 * m {
        fact *= i as f64;
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    sign * bernoulli_f64(2 * m) * two_pi.powi(2 * m as i32) / (2.0 * fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn leading_values() {
        assert_eq!(*bernoulli(0), q(1, 1));
        assert_eq!(*bernoulli(1), q(-1, 2));
        assert_eq!(*bernoulli(2), q(1, 6));
        assert_eq!(*bernoulli(4), q(-1, 30));
        assert_eq!(*bernoulli(12), q(-691, 2730));
        for m in 1..40 {
            assert!(bernoulli(2 * m + 1).is_zero());
        }
    }

    fn zeta_direct(s: i32) -> f64 {
        // Σ n^{-s} with an integral tail, ample for s ≥ 2
        let n = 200_000u64;
        let head: f64 = (1..n).rev().map(|k| (k as f64).powi(-s)).sum();
        let nf = n as f64;
        head + nf.powi(1 - s) / (s - 1) as f64 + 0.5 * nf.powi(-s) + s as f64 / 12.0 * nf.powi(-s - 1)
    }

    #[test]
    fn matches_zeta_at_even_integers() {
        for m in 1..=8usize {
            let z = zeta_direct(2 * m as i32);
            let mut fact = 1.0;
            for i in 1..=2 * m {
                fact *= i as f64;
            }
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            let predicted = sign * 2.0 * fact / (2.0 * std::f64::consts::PI).powi(2 * m as i32) * z;
            assert!((bernoulli_f64(2 * m) - predicted).abs() < 1e-12, "m={m}");
            assert!((zeta_even(m) - z).abs() < 1e-13);
        }
    }

    #[test]
    fn polynomial_identities() {
        let t = BernoulliTable::global();
        for n in 0..12 {
            assert_eq!(t.poly_exact(n, &q(0, 1)), *bernoulli(n));
            for &x in &[0.1, 0.37, 0.5, 0.9] {
                let lhs = t.poly(n + 1, x + 1.0) - t.poly(n + 1, x);
                let rhs = (n + 1) as f64 * x.powi(n as i32);
                assert!((lhs - rhs).abs() < 1e-10);
            }
        }
        let exact = t.poly_exact(3, &q(1, 3));
        assert_eq!(exact, q(1, 27) - q(1, 6) + q(1, 6));
    }

    #[test]
    fn hurwitz_examples() {
        for &x in &[0.1, 0.25, 0.8] {
            assert!((hurwitz_zeta_neg(0, x).unwrap() - (0.5 - x)).abs() < 1e-15);
        }
        assert!((hurwitz_zeta_neg(1, 1.0).unwrap() + 1.0 / 12.0).abs() < 1e-15);
        assert!((zeta_neg_int(1) + 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(hurwitz_zeta_neg(0, 0.5).unwrap(), 0.0);
        assert!(hurwitz_zeta_neg(-1, 0.5).is_err());
        assert!((zeta_neg_int(0) + 0.5).abs() < 1e-16);
        assert!((zeta_neg_int(5) + 1.0 / 252.0).abs() < 1e-16);
    }
}
