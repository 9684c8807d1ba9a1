//! Cotangent sums `c₀(r/b)`, Vasyunin and Dedekind sums, their reciprocity
//! laws, the Estermann function at `s = 0`, the sawtooth series `g(x)` with
//! its Gauss-map machinery, and the Nyman–Beurling quadratic form.
//!
//! Every approximate evaluator returns its value together with a method tag
//! and an error bound, so results from different paths can be compared.

pub mod error;
pub mod numtheory;
pub mod quad;
pub mod summation;
pub mod cotangent;
pub mod fast_eval;
pub mod estermann;
pub mod wilton;
pub mod nyman_beurling;
pub mod sampling;

pub use error::{Error, Result};
pub use numtheory::fraction::ReducedFraction;
pub use cotangent::{Method, SumValue};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `log 2π − γ`, the diagonal of the Gram matrix.
pub fn log_two_pi_minus_gamma() -> f64 {
    (2.0 * std::f64::consts::PI).ln() - EULER_GAMMA
}
