//! The function `g(x) = Σ (1 − 2{lx})/l`, its Gauss-map (Wilton) form, the
//! integral `A(λ)`, moments and distribution of `g`, and Möbius-weighted sums.

mod g;
mod orbit;

pub use g::{calibrate_rational_g, g_periodic, g_rational, g_rational_value, g_series, g_series_rational, GCalibration, GMethod, GValue};
pub use orbit::{
    bt_convergence_test, mmy_contraction, neumann_sum, t_operator, wilton, wilton_surd, BtVerdict, ContractionReport,
    QuotientStream, wilton_residual, WiltonResidual,
};

mod alambda;

pub use alambda::{a_lambda, a_lambda_identity, a_one, ALambda, ALambdaConfig, ALambdaIdentity};

mod moments;

pub use moments::{
    abs_moment_check, distribution_f, gamma_ratio_bounds, moments, strip_moments, AbsMomentReport, EmpiricalCdf,
    GammaBounds, MomentEntry, MomentKind, MomentTable, StripReport, StripRow, GRID_PRIME,
};

mod mobius;

pub use mobius::{constants_final_theorem, mobius_g_sum, FinalConstants, MobiusSum, Weights};
