//! The Nyman–Beurling distance `d_N² = (1/2π)∫|1 − ζ(s)D_N(s)|² dt/|s|²` on
//! `Re s = 1/2`, as the quadratic form `1 − 2aᵀℓ + aᵀGa`.

mod gram;
mod system;

pub use gram::{
    gram_coefficient, gram_entry, gram_quadrature_check, linear_term, linear_term_gate, vasyunin_closed_form,
    vasyunin_fast, CriticalLineGrid, QuadratureDefect,
};
pub use system::{
    bcf_asymptotic_report, bcf_constant, d_squared, distance_profile, gram_matrix, linear_vector, quadratic_form,
    smallest_eigenvalue, vn_coefficients, BcfReport, BcfRow, DistanceProfile, GramSystem, SystemKind,
};
