//! Finite cotangent sums evaluated directly, plus the identities tying them
//! together. These naive evaluators are the reference for every faster path.

mod c0;
mod dedekind;
mod generalized;
mod series;
mod vasyunin;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use c0::{c0_naive, c0_via_q, q_sum, C0Table};
pub use dedekind::{dedekind_cotprod, dedekind_exact, dedekind_reciprocity_check, dedekind_sawtooth};
pub use generalized::{c_a, c_minus1};
pub use series::{c0_fractional_series, s_sum};
pub use vasyunin::{vasyunin, vasyunin_c0_identity_check, vasyunin_value, IdentityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    Fast,
    Asymptotic,
    Series,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Naive => "naive",
            Method::Fast => "fast",
            Method::Asymptotic => "asymptotic",
            Method::Series => "series",
        };
        f.write_str(s)
    }
}

/// A computed sum with its provenance and an error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumValue {
    pub value: f64,
    pub method: Method,
    pub error_bound: f64,
}

impl SumValue {
    pub fn naive(value: f64) -> Self {
        Self { value, method: Method::Naive, error_bound: 0.0 }
    }
}

/// `cot(πk/b)` with `k` reduced modulo `b`.
///
/// Residues above `b/2` are mapped to `−cot(π(b−k)/b)`, so the result is
/// exactly odd in `k`. The cosine is taken as the sine of the complementary
/// angle, which keeps full relative accuracy near `π/2`.
#[inline]
pub fn cot_pi_frac(k: u64, b: u64) -> f64 {
    let k = k % b;
    let twice = 2 * k as u128;
    if twice == b as u128 {
        return 0.0;
    }
    if twice > b as u128 {
        -cot_base(b - k, b)
    } else {
        cot_base(k, b)
    }
}

#[inline]
fn cot_base(k: u64, b: u64) -> f64 {
    let bf = b as f64;
    let theta = PI * (k as f64 / bf);
    let comp = PI * ((b - 2 * k) as f64 / (2.0 * bf));
    comp.sin() / theta.sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cotangent_values() {
        assert!((cot_pi_frac(1, 3) - 1.0 / 3f64.sqrt()).abs() < 2e-16);
        assert!((cot_pi_frac(1, 4) - 1.0).abs() < 1e-15);
        assert_eq!(cot_pi_frac(1, 2), 0.0);
        assert_eq!(cot_pi_frac(3, 7), -cot_pi_frac(4, 7));
        assert_eq!(cot_pi_frac(10, 7), cot_pi_frac(3, 7));
        for b in 3..200u64 {
            for k in 1..b {
                let direct = 1.0 / (PI * k as f64 / b as f64).tan();
                let got = cot_pi_frac(k, b);
                assert!((got - direct).abs() <= 1e-13 * (1.0 + direct.abs()));
            }
        }
    }
}
