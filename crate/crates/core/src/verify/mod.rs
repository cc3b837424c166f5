//! Cross-check suites and their machine-readable reports.
//!
//! Each suite is a list of independent checks; check `i` draws from its own
//! block of random streams, so the output is a pure function of
//! `(suite, grid, seed, n_samples)`.

mod report;
mod suites;

pub use report::{parse_csv, parse_json, report_to_csv, report_to_json, VerificationReport};
pub use suites::{
    alpha_cauchy_ks, rayleigh_cdf_table, rayleigh_ks, run_suite, stieltjes_quadrature, tanh_lt, Suite, DEFAULT_SAMPLES,
    EXPONENTIAL_GS_TERMS, HITTING_GS_TERMS, KS_LIMIT, MC_SIGMAS, SUITE_SERIES_TERMS,
};
