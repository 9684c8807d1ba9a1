//! Browser bindings: compare the naive and fast evaluations of `c₀(r/b)`,
//! sample the ellipse-like cloud `(r, c₀(r/b))`, and trace the distance
//! profile `d²(N)`.

use cotan::cotangent::{c0_naive, C0Table};
use cotan::fast_eval::{c0_fast_traced, naive_rounding_estimate};
use cotan::numtheory::arith::gcd;
use cotan::nyman_beurling::distance_profile;
use cotan::ReducedFraction;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_ELLIPSE_B: u64 = 20_000;
const MAX_PROFILE_N: usize = 300;

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub r: u64,
    pub b: u64,
    pub naive: f64,
    pub naive_bound: f64,
    pub fast: f64,
    pub fast_bound: f64,
    pub steps: usize,
    pub gap: f64,
}

pub fn compare(r: u64, b: u64) -> cotan::Result<Comparison> {
    let x = ReducedFraction::coprime(r, b)?;
    let naive = c0_naive(x)?.value;
    let fast = c0_fast_traced(x)?;
    Ok(Comparison {
        r,
        b,
        naive,
        naive_bound: naive_rounding_estimate(b),
        fast: fast.value.value,
        fast_bound: fast.value.error_bound,
        steps: fast.steps,
        gap: (naive - fast.value.value).abs(),
    })
}

/// Interleaved `[r₁, c₀(r₁/b), r₂, c₀(r₂/b), …]` over coprime `r`.
pub fn ellipse(b: u64) -> cotan::Result<Vec<f64>> {
    if !(3..=MAX_ELLIPSE_B).contains(&b) {
        return Err(cotan::Error::Domain { value: b as f64, domain: "3 ≤ b ≤ 20000" });
    }
    let table = C0Table::new(b);
    Ok((1..b).filter(|&r| gcd(r, b) == 1).flat_map(|r| [r as f64, table.c0(r)]).collect())
}

/// Interleaved `[d²_opt(N), d²(V_N)]` for `N = 1..=n`.
pub fn profile(n: usize) -> cotan::Result<Vec<f64>> {
    if !(1..=MAX_PROFILE_N).contains(&n) {
        return Err(cotan::Error::Domain { value: n as f64, domain: "1 ≤ N ≤ 300" });
    }
    let p = distance_profile(n)?;
    Ok(p.optimal.iter().zip(&p.vn).flat_map(|(o, v)| [*o, *v]).collect())
}

fn js_err(e: cotan::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = compareC0)]
pub fn compare_c0(r: u32, b: u32) -> Result<String, JsError> {
    let c = compare(r as u64, b as u64).map_err(js_err)?;
    Ok(serde_json::to_string(&c).expect("plain record"))
}

#[wasm_bindgen(js_name = ellipsePoints)]
pub fn ellipse_points(b: u32) -> Result<Vec<f64>, JsError> {
    ellipse(b as u64).map_err(js_err)
}

#[wasm_bindgen(js_name = distanceProfile)]
pub fn distance_profile_points(n: u32) -> Result<Vec<f64>, JsError> {
    profile(n as usize).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_within_bounds() {
        let c = compare(5, 1009).unwrap();
        assert!(c.gap <= c.fast_bound + c.naive_bound);
        assert!(compare(2, 4).is_err());
    }

    #[test]
    fn ellipse_is_odd() {
        let pts = ellipse(101).unwrap();
        assert_eq!(pts.len(), 200);
        assert_eq!(pts[0], 1.0);
        assert_eq!(pts[1], -pts[199]);
        assert!(ellipse(2).is_err() && ellipse(30_000).is_err());
    }

    #[test]
    fn profile_starts_at_one_term() {
        let p = profile(10).unwrap();
        assert_eq!(p.len(), 20);
        assert!((p[0] - 0.8582).abs() < 1e-3);
        assert!(p[1] >= p[0]);
        assert!(profile(0).is_err());
    }
}
