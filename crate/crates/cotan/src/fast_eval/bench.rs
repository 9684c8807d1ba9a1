use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::asymptotic::c0_asymptotic;
use super::fast::c0_fast_traced;
use crate::cotangent::{c0_naive, Method};
use crate::error::Result;
use crate::numtheory::fraction::ReducedFraction;

/// One timed evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub b: u64,
    pub r: u64,
    pub method: Method,
    /// Median over the repetitions.
    pub nanoseconds: u64,
    pub value: f64,
    pub error_bound: f64,
    /// Reciprocity steps; zero for the other methods.
    pub steps: usize,
}

fn median_ns<F: FnMut() -> Result<f64>>(reps: usize, mut f: F) -> Result<u64> {
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        std::hint::black_box(f()?);
        times.push(t.elapsed().as_nanos() as u64);
    }
    times.sort_unstable();
    Ok(times[times.len() / 2])
}

/// Times the naive, fast and (for `r = 1`) asymptotic evaluations of `c₀(r/b)`.
pub fn bench_c0(r: u64, b: u64, reps: usize) -> Result<Vec<BenchRecord>> {
    let x = ReducedFraction::coprime(r, b)?;
    let mut out = Vec::with_capacity(3);
    let naive = c0_naive(x)?;
    out.push(BenchRecord {
        b,
        r,
        method: Method::Naive,
        nanoseconds: median_ns(reps, || Ok(c0_naive(x)?.value))?,
        value: naive.value,
        error_bound: naive.error_bound,
        steps: 0,
    });
    let fast = c0_fast_traced(x)?;
    out.push(BenchRecord {
        b,
        r,
        method: Method::Fast,
        nanoseconds: median_ns(reps.max(5), || Ok(c0_fast_traced(x)?.value.value))?,
        value: fast.value.value,
        error_bound: fast.value.error_bound,
        steps: fast.steps,
    });
    if let Ok(a) = c0_asymptotic(b, 5, r) {
        out.push(BenchRecord {
            b,
            r,
            method: Method::Asymptotic,
            nanoseconds: median_ns(reps.max(5), || Ok(c0_asymptotic(b, 5, r)?.value))?,
            value: a.value,
            error_bound: a.error_bound,
            steps: 0,
        });
    }
    Ok(out)
}
