use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Method, SumValue};
use crate::error::{invalid, Result};
use crate::summation::Neumaier;

/// `c₀(1/b)` from `(1/π)·Σ_{b∤a} b(1 − 2{a/b})/a` truncated after `blocks`
/// complete blocks of `b` terms.
///
/// Inside block `k` the terms `a = kb + j` and `a = (k+1)b − j` combine to
/// `(b − 2j)²/((kb + j)((k+1)b − j))`, so a block is `O(b/k²)`.
pub fn c0_fractional_series(b: u64, blocks: u64) -> Result<SumValue> {
    if b < 2 {
        return Err(invalid("b", "must be at least 2"));
    }
    if blocks < 1 {
        return Err(invalid("blocks", "must be at least 1"));
    }
    let bf = b as f64;
    let mut acc = Neumaier::new();
    for k in 0..blocks {
        let kb = k as f64 * bf;
        let mut block = Neumaier::new();
        for j in 1..=(b - 1) / 2 {
            let d = (b - 2 * j) as f64;
            let jf = j as f64;
            block.add(d * d / ((kb + jf) * (kb + bf - jf)));
        }
        acc.add(block.value());
    }
    Ok(SumValue {
        value: acc.value() / PI,
        method: Method::Series,
        error_bound: 2.0 * bf / (3.0 * PI * blocks as f64),
    })
}

/// `S(L; b) = 2b·Σ_{a=1}^{L} ⌊a/b⌋/a` as an exact rational.
pub fn s_sum(l: u64, b: u64) -> Result<BigRational> {
    if l < 1 {
        return Err(invalid("L", "must be at least 1"));
    }
    if b < 2 {
        return Err(invalid("b", "must be at least 2"));
    }
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for a in b..=l {
        acc += BigRational::new(BigInt::from(a / b), BigInt::from(a));
    }
    Ok(acc * BigRational::from_integer(BigInt::from(2 * b)))
}
