//! `c₀(r/b)` in `O(log b)` operations through the reciprocity law, together
//! with the Eisenstein-series machinery behind it, the asymptotic expansion
//! of `c₀(1/b)`, short-interval maxima and a timing harness.

mod kernel;

pub use kernel::{
    aux_cos_integral, exp_e1, kernel_table_error, reciprocity_kernel, reciprocity_kernel_direct,
    reciprocity_kernel_value, KernelValue,
};

mod fast;

pub use fast::{c0_fast, c0_fast_traced, c0_fast_value, naive_rounding_estimate, FastTrace};

mod eisenstein;
mod reciprocity;

pub use eisenstein::{eisenstein_e, psi, PsiSeriesConfig, SeriesValue};
pub use reciprocity::{psi0_boundary, reciprocity_defect, Psi0Estimate};

mod asymptotic;

pub use asymptotic::{c0_asymptotic, expansion_coefficient, fit_constants, linear_coefficient, main_terms, FitReport};

mod scan;

pub use scan::{cf_growth_census, max_scan, max_scan_naive, CensusReport, CensusThreshold, MaxScanResult};

mod bench;

pub use bench::{bench_c0, BenchRecord};
