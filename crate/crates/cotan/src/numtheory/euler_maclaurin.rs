//! The Euler summation formula with an explicitly integrated remainder.

use super::bernoulli::BernoulliTable;
use crate::error::{invalid, Result};
use crate::quad::adaptive_simpson;

/// A function that can report its own derivatives.
pub trait SmoothFn: Sync {
    /// The `order`-th derivative at `u` (order 0 is the function itself).
    fn derivative(&self, order: usize, u: f64) -> f64;

    /// `∫_a^b f`, when known in closed form.
    fn integral(&self, _a: f64, _b: f64) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerMaclaurin {
    /// `(f(0) + f(Z))/2 + ∫₀^Z f + Σ_j B_{2j}/(2j)!·(f^{(2j−1)}(Z) − f^{(2j−1)}(0))`
    pub main: f64,
    /// `r_N(f, Z)`
    pub remainder: f64,
    /// Quadrature error estimate for the remainder.
    pub remainder_error: f64,
}

impl EulerMaclaurin {
    /// The right-hand side of the formula, which equals `Σ_{ν=0}^{Z} f(ν)`.
    pub fn sum(&self) -> f64 {
        self.main + self.remainder
    }
}

/// Evaluates the formula for `Σ_{ν=0}^{Z} f(ν)` with `N ≥ 1` correction terms.
pub fn euler_maclaurin_sum<F: SmoothFn + ?Sized>(f: &F, z: u64, n: usize) -> Result<EulerMaclaurin> {
    if n < 1 {
        return Err(invalid("N", "must be at least 1"));
    }
    let table = BernoulliTable::global();
    if 2 * n + 1 > table.max_index() {
        return Err(invalid("N", "exceeds the Bernoulli table"));
    }
    let zf = z as f64;
    let integral = match f.integral(0.0, zf) {
        Some(v) => v,
        None => (0..z)
            .map(|k| adaptive_simpson(&|u| f.derivative(0, u), k as f64, k as f64 + 1.0, 1e-13, 40).value)
            .sum(),
    };
    let mut main = 0.5 * (f.derivative(0, 0.0) + f.derivative(0, zf)) + integral;
    let mut fact = 1.0;
    for j in 1..=n {
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        let jump = f.derivative(2 * j - 1, zf) - f.derivative(2 * j - 1, 0.0);
        main += table.float(2 * j) / fact * jump;
    }

    let order = 2 * n + 1;
    let fact_order = fact * order as f64;
    let kernel = |frac: f64| table.poly(order, frac);
    let mut remainder = 0.0;
    let mut remainder_error = 0.0;
    let tol = 1e-10 / (z.max(1) as f64);
    for k in 0..z {
        let lo = k as f64;
        let g = |u: f64| kernel(u - lo) * f.derivative(order, u);
        let q = adaptive_simpson(&g, lo, lo + 1.0, tol, 40);
        remainder += q.value;
        remainder_error += q.error_estimate;
    }
    Ok(EulerMaclaurin { main, remainder: remainder / fact_order, remainder_error: remainder_error / fact_order })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Square;
    impl SmoothFn for Square {
        fn derivative(&self, order: usize, u: f64) -> f64 {
            match order {
                0 => u * u,
                1 => 2.0 * u,
                2 => 2.0,
                _ => 0.0,
            }
        }
        fn integral(&self, a: f64, b: f64) -> Option<f64> {
            Some((b * b * b - a * a * a) / 3.0)
        }
    }

    struct Constant(f64);
    impl SmoothFn for Constant {
        fn derivative(&self, order: usize, _u: f64) -> f64 {
            if order == 0 {
                self.0
            } else {
                0.0
            }
        }
    }

    struct Decay;
    impl SmoothFn for Decay {
        fn derivative(&self, order: usize, u: f64) -> f64 {
            if order % 2 == 0 {
                (-u).exp()
            } else {
                -(-u).exp()
            }
        }
    }

    struct Reciprocal;
    impl SmoothFn for Reciprocal {
        fn derivative(&self, order: usize, u: f64) -> f64 {
            let mut fact = 1.0;
            for i in 1..=order {
                fact *= i as f64;
            }
            let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            sign * fact / (u + 1.0).powi(order as i32 + 1)
        }
        fn integral(&self, a: f64, b: f64) -> Option<f64> {
            Some(((b + 1.0) / (a + 1.0)).ln())
        }
    }

    #[test]
    fn sum_of_squares() {
        let em = euler_maclaurin_sum(&Square, 10, 1).unwrap();
        assert_eq!(em.remainder, 0.0);
        assert!((em.main - 385.0).abs() < 1e-12);
    }

    #[test]
    fn constant_function() {
        let em = euler_maclaurin_sum(&Constant(2.5), 7, 2).unwrap();
        assert!((em.sum() - 8.0 * 2.5).abs() < 1e-12);
    }

    #[test]
    fn identity_for_smooth_functions() {
        let direct = |f: &dyn Fn(f64) -> f64, z: u64| (0..=z).map(|v| f(v as f64)).sum::<f64>();
        for n in 1..=3 {
            let em = euler_maclaurin_sum(&Square, 12, n).unwrap();
            assert!((em.sum() - direct(&|u| u * u, 12)).abs() < 1e-9);
            let em = euler_maclaurin_sum(&Decay, 20, n).unwrap();
            assert!((em.sum() - direct(&|u| (-u).exp(), 20)).abs() < 1e-9, "n={n}");
            let em = euler_maclaurin_sum(&Reciprocal, 100, n).unwrap();
            assert!((em.sum() - direct(&|u| 1.0 / (u + 1.0), 100)).abs() < 1e-10, "n={n}");
        }
        assert!(euler_maclaurin_sum(&Square, 3, 0).is_err());
    }
}
