use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::kernel::{reciprocity_kernel, reciprocity_kernel_value};
use crate::cotangent::{Method, SumValue};
use crate::error::Result;
use crate::numtheory::fraction::ReducedFraction;
use crate::summation::Neumaier;

const U: f64 = f64::EPSILON / 2.0;

/// A fast evaluation together with the number of reciprocity steps taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FastTrace {
    pub value: SumValue,
    pub steps: usize,
}

/// `c₀(r/b)` by walking the Euclidean chain of `r/b`.
///
/// With `(r₀, b₀) = (r, b)` and `(r_{k+1}, b_{k+1}) = (b_k mod r_k, r_k)`,
///
/// `c₀(r/b) = Σ_k (−1)^k (b/b_k)·(F(r_k/b_k) + 1/(πr_k))`
///
/// where `F` is the reciprocity kernel. The chain has as many steps as the
/// continued fraction of `r/b` has quotients.
pub fn c0_fast(x: ReducedFraction) -> Result<SumValue> {
    Ok(c0_fast_traced(x)?.value)
}

pub fn c0_fast_traced(x: ReducedFraction) -> Result<FastTrace> {
    x.require_denominator(2)?;
    let (mut r, mut b) = (x.residue(), x.b());
    let bf = b as f64;
    let mut acc = Neumaier::new();
    let mut err = 0.0;
    let mut magnitude = 0.0;
    let mut steps = 0;
    let mut sign = 1.0;
    while r != 0 {
        let xk = r as f64 / b as f64;
        let k = reciprocity_kernel(xk)?;
        let scale = bf / b as f64;
        let inv = 1.0 / (PI * r as f64);
        let term = scale * (k.value + inv);
        acc.add(sign * term);
        magnitude += term.abs();
        // kernel error, plus the rounding of r/b propagated through |xF′(x)| ≲ |F| + 1/(πx)
        err += scale * (k.error_bound + 4.0 * U * (k.value.abs() + inv + 1.0 / (PI * xk)));
        (r, b) = (b % r, r);
        sign = -sign;
        steps += 1;
    }
    err += 4.0 * U * magnitude;
    Ok(FastTrace { value: SumValue { value: acc.value(), method: Method::Fast, error_bound: err }, steps })
}

/// `c₀(r/b)` along the same chain, without validation or error tracking.
/// `r` must be coprime to `b`, `b ≥ 2`.
#[inline]
pub fn c0_fast_value(r: u64, b: u64) -> f64 {
    let (mut r, mut b) = (r % b, b);
    let bf = b as f64;
    let mut acc = 0.0;
    let mut sign = 1.0;
    while r != 0 {
        let scale = bf / b as f64;
        acc += sign * scale * (reciprocity_kernel_value(r as f64 / b as f64) + 1.0 / (PI * r as f64));
        (r, b) = (b % r, r);
        sign = -sign;
    }
    acc
}

/// A rounding estimate for [`crate::cotangent::c0_naive`] at denominator `b`:
/// `8u` times the sum of absolute paired terms, bounded by `(b/π)(log b + 1)`.
pub fn naive_rounding_estimate(b: u64) -> f64 {
    let bf = b as f64;
    8.0 * U * (bf / PI) * (bf.ln() + 1.0)
}
