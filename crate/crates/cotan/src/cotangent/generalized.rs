use std::f64::consts::PI;

use super::{cot_pi_frac, dedekind_sawtooth, SumValue};
use crate::error::{invalid, Result};
use crate::numtheory::arith::mul_mod;
use crate::numtheory::bernoulli::bernoulli_poly;
use crate::numtheory::fraction::ReducedFraction;
use crate::summation::Neumaier;

/// `c_a(r/b) = b^a Σ_{m=1}^{b−1} cot(πmr/b)·ζ(−a, m/b)` for `a ≥ 0`.
///
/// `a = −1` is routed to [`c_minus1`]. With `ζ(−a, x) = −B_{a+1}(x)/(a+1)`
/// and `B_{a+1}(1−x) = (−1)^{a+1}B_{a+1}(x)`, the sum vanishes for odd `a`.
pub fn c_a(x: ReducedFraction, a: i64) -> Result<SumValue> {
    if a < -1 {
        return Err(invalid("a", format!("{a} is below −1")));
    }
    if a == -1 {
        return c_minus1(x);
    }
    x.require_denominator(2)?;
    let (r, b) = (x.residue(), x.b());
    let n = a as usize + 1;
    if n % 2 == 0 {
        return Ok(SumValue::naive(0.0));
    }
    let bf = b as f64;
    let mut acc = Neumaier::new();
    for m in 1..=(b - 1) / 2 {
        let h = -bernoulli_poly(n, m as f64 / bf) / n as f64;
        acc.add(2.0 * h * cot_pi_frac(mul_mod(m, r, b), b));
    }
    Ok(SumValue::naive(bf.powi(a as i32) * acc.value()))
}

/// `c₋₁(r/b) := 2π·s(r/b)`.
pub fn c_minus1(x: ReducedFraction) -> Result<SumValue> {
    let s = dedekind_sawtooth(x)?;
    Ok(SumValue::naive(2.0 * PI * s.value))
}
