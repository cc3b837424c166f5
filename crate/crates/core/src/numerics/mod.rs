//! Quadrature, Laplace inversion and root finding.

mod laplace;
mod quad;
mod roots;

pub use laplace::{
    gaver_stehfest_cdf, laplace_invert_cdf, stehfest_weights, LaplaceTransform, DEFAULT_GS_TERMS, INSTABILITY_GAP,
    MAX_GS_TERMS,
};
pub use quad::{
    integrate_adaptive, integrate_adaptive_detailed, integrate_beta_weighted, integrate_oscillatory_cos,
    integrate_oscillatory_cos_from, integrate_power_tail, QuadSpec, Quadrature,
};
pub use roots::invert_monotone;
