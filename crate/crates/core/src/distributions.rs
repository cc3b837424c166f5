//! Densities and transforms of the auxiliary laws: beta-prime, alpha-Cauchy,
//! Linnik, z-distributions, Meixner and the alpha-Rayleigh survival function.

use std::f64::consts::PI;

use statrs::function::beta::ln_beta;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, integrate_oscillatory_cos, integrate_power_tail, QuadSpec};
use crate::resolvent::{density_p, density_p1_at_zero, StableIndex};

fn quad() -> QuadSpec {
    QuadSpec::default()
        .with_abs_tol(1e-13)
        .with_rel_tol(1e-12)
        .with_max_panels(8000)
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Density of `G_a / G_b` for independent gamma variables.
pub fn beta_prime_density(a: f64, b: f64, x: f64) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    if x <= 0.0 {
        return if x.is_nan() {
            Err(Error::Domain("x is NaN".into()))
        } else {
            Ok(0.0)
        };
    }
    Ok(((a - 1.0) * x.ln() - (a + b) * x.ln_1p() - ln_beta(a, b)).exp())
}

/// Normalising constant `c_alpha = alpha sin(pi/alpha) / (2 pi)` of the alpha-Cauchy law.
pub fn alpha_cauchy_constant(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha-Cauchy law needs alpha > 1, got {alpha}")));
    }
    Ok(alpha * (PI / alpha).sin() / (2.0 * PI))
}

/// `c_alpha / (1 + |x|^alpha)`.
pub fn alpha_cauchy_density(alpha: f64, x: f64) -> Result<f64> {
    let c = alpha_cauchy_constant(alpha)?;
    if x.is_nan() {
        return Err(Error::Domain("x is NaN".into()));
    }
    Ok(c / (1.0 + x.abs().powf(alpha)))
}

/// Characteristic function of the alpha-Cauchy law, `2 int_0^inf cos(theta x) f(x) dx`.
pub fn alpha_cauchy_charfn(alpha: f64, theta: f64) -> Result<f64> {
    alpha_cauchy_constant(alpha)?;
    let f = |x: f64| alpha_cauchy_density(alpha, x).unwrap_or(0.0);
    let v = if theta == 0.0 {
        integrate_power_tail(f, 0.0, alpha, &quad())?
    } else {
        integrate_oscillatory_cos(f, theta, &quad())?
    };
    Ok(2.0 * v)
}

/// Linnik density `(1 / 2 pi) int exp(-i x theta) / (1 + |theta|^alpha) d theta`.
pub fn linnik_density(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!(
            "Linnik density implemented for 1 < alpha <= 2, got {alpha}"
        )));
    }
    let g = |t: f64| 1.0 / (1.0 + t.powf(alpha));
    let v = if x == 0.0 {
        integrate_power_tail(g, 0.0, alpha, &quad())?
    } else {
        integrate_oscillatory_cos(g, x, &quad())?
    };
    Ok(v / PI)
}

/// Linnik density as the mixture `int_0^inf e^{-s} p_s(x) ds`, an independent route.
pub fn linnik_density_mixture(alpha: f64, x: f64) -> Result<f64> {
    let idx = StableIndex::hitting(alpha)?;
    integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            (-s).exp() * density_p(&idx, s, x).unwrap_or(f64::NAN)
        },
        0.0,
        f64::INFINITY,
        &QuadSpec::default().with_abs_tol(1e-12).with_rel_tol(1e-11),
    )
}

/// Density of the z-distribution `Z(a, a)`:
/// `pi / B(a, a) * exp(a pi x) / (1 + exp(pi x))^(2a)`.
pub fn z_density(a: f64, x: f64) -> Result<f64> {
    check_positive("a", a)?;
    if x.is_nan() {
        return Err(Error::Domain("x is NaN".into()));
    }
    // exp(a pi x) / (1 + exp(pi x))^(2a) = (2 cosh(pi x / 2))^(-2a)
    let y = 0.5 * PI * x.abs();
    let ln_2cosh = y + (-2.0 * y).exp().ln_1p();
    Ok((PI.ln() - ln_beta(a, a) - 2.0 * a * ln_2cosh).exp())
}

/// Cumulant exponent
/// `Phi_a(theta) = 2 int_0^inf (1 - cos(theta u)) e^{-a pi u} / (u (1 - e^{-pi u})) du`.
pub fn phi_exponent(a: f64, theta: f64) -> Result<f64> {
    check_positive("a", a)?;
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be finite, got {theta}")));
    }
    let theta = theta.abs();
    if theta == 0.0 {
        return Ok(0.0);
    }
    const SERIES_CUT: f64 = 1e-4;
    let integrand = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u < SERIES_CUT && theta * u < 1e-2 {
            let tu2 = (theta * u) * (theta * u);
            // (1 - cos) / u^2 and e^{-a pi u} / (1 - e^{-pi u}) * u, both to first order
            let num = theta * theta * (0.5 - tu2 / 24.0);
            let den = (1.0 + (0.5 - a) * PI * u) / PI;
            return num * den;
        }
        let half = (0.5 * theta * u).sin();
        2.0 * half * half * (-a * PI * u).exp() / (u * -(-PI * u).exp_m1())
    };
    // Past this point the integrand is below 1e-18 in absolute value.
    let upper = (42.0 + (2.0 / (PI * a)).ln().max(0.0)) / (a * PI);
    let spec = quad().with_max_panels(20_000);
    let period = 2.0 * PI / theta;
    let v = if upper / period < 50.0 {
        integrate_adaptive(integrand, 0.0, upper, &spec)?
    } else {
        let mut acc = 0.0;
        let mut lo = 0.0;
        while lo < upper {
            let hi = (lo + 8.0 * period).min(upper);
            acc += integrate_adaptive(integrand, lo, hi, &spec)?;
            lo = hi;
        }
        acc
    };
    Ok(2.0 * v)
}

/// Meixner density
/// `(2 cos(beta/2))^t B(t/2, t/2) / (2 pi) * exp(beta x - Phi_{t/2}(pi x))`.
pub fn meixner_density(beta: f64, t: f64, x: f64) -> Result<f64> {
    if !(beta.abs() < PI) {
        return Err(Error::Domain(format!("Meixner skew needs |beta| < pi, got {beta}")));
    }
    check_positive("t", t)?;
    let ln_pref = t * (2.0 * (0.5 * beta).cos()).ln() + ln_beta(0.5 * t, 0.5 * t) - (2.0 * PI).ln();
    let phi = phi_exponent(0.5 * t, PI * x)?;
    Ok((ln_pref + beta * x - phi).exp())
}

/// Survival function of the alpha-Rayleigh law, `p_1(x) / p_1(0)` for `x >= 0`.
pub fn rayleigh_survival(alpha: f64, x: f64) -> Result<f64> {
    let idx = StableIndex::new(alpha)?;
    if x.is_nan() {
        return Err(Error::Domain("x is NaN".into()));
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    Ok((density_p(&idx, 1.0, x)? / density_p1_at_zero(&idx)).clamp(0.0, 1.0))
}

/// Moment `E[T^s]` of the stable subordinator with `E exp(-q T) = exp(-q^beta)`, `s < beta`.
pub fn unilateral_stable_moment(beta: f64, s: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) || !(s < beta) {
        return Err(Error::Domain(format!("moment of order {s} needs s < beta = {beta}")));
    }
    Ok(gamma(1.0 - s / beta) / gamma(1.0 - s))
}
