//! Exact integer and rational primitives shared by every other module.

pub mod arith;
pub mod bernoulli;
pub mod cf;
pub mod euler_maclaurin;
pub mod fraction;
pub mod gauss;
pub mod zeta;

pub use arith::{arithmetical, gcd, mod_inverse, Arithmetical};
pub use bernoulli::{bernoulli, bernoulli_f64, bernoulli_poly, hurwitz_zeta_neg};
pub use cf::{continued_fraction, ContinuedFraction};
pub use euler_maclaurin::{euler_maclaurin_sum, EulerMaclaurin, SmoothFn};
pub use fraction::ReducedFraction;
pub use gauss::{gauss_map_orbit, GaussStep, QuadraticSurd};
pub use zeta::{zeta_critical_line, ZetaEval};
