//! Transition densities, q-resolvent densities and the compensated
//! potential `h` of the symmetric stable process with
//! `E exp(i theta X_t) = exp(-t |theta|^alpha)`.
//!
//! At `alpha = 2` the process is `sqrt(2)` times a standard Brownian motion and
//! every function below switches to its closed form.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, integrate_oscillatory_cos, integrate_oscillatory_cos_from, QuadSpec};

/// Stability index `alpha` in `(0, 2]` together with `gamma = 1/alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableIndex {
    alpha: f64,
}

impl StableIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!(
                "stability index must lie in (0, 2], got {alpha}"
            )));
        }
        Ok(StableIndex { alpha })
    }

    /// Index for which single points are hit, `1 < alpha <= 2`.
    pub fn hitting(alpha: f64) -> Result<Self> {
        let idx = Self::new(alpha)?;
        idx.require_hitting()?;
        Ok(idx)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        1.0 / self.alpha
    }

    pub fn is_brownian(&self) -> bool {
        self.alpha == 2.0
    }

    pub fn require_hitting(&self) -> Result<()> {
        if self.alpha > 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "points are polar for alpha = {} (need 1 < alpha <= 2)",
                self.alpha
            )))
        }
    }
}

/// Quadrature settings for resolvent densities. Tighter than the library
/// default because Laplace inversion amplifies transform noise.
pub fn resolvent_quad_spec() -> QuadSpec {
    QuadSpec::default()
        .with_abs_tol(1e-14)
        .with_rel_tol(1e-13)
        .with_max_panels(4000)
}

fn density_quad_spec() -> QuadSpec {
    QuadSpec::default()
        .with_abs_tol(1e-13)
        .with_rel_tol(1e-12)
        .with_max_panels(4000)
}

/// `p_1(0) = Gamma(1/alpha) / (alpha pi)`.
pub fn density_p1_at_zero(idx: &StableIndex) -> f64 {
    let a = idx.alpha();
    gamma(1.0 / a) / (a * PI)
}

/// Transition density `p_t(x)`, by cosine quadrature of the characteristic function.
pub fn density_p(idx: &StableIndex, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!(
            "density needs t > 0 and finite x, got t={t}, x={x}"
        )));
    }
    let x = x.abs();
    if idx.is_brownian() {
        return Ok((-x * x / (4.0 * t)).exp() / (2.0 * (PI * t).sqrt()));
    }
    let scale = t.powf(-1.0 / idx.alpha());
    Ok(scale * density_p1_quadrature(idx, x * scale)?)
}

/// `p_1(y) = (1/pi) int_0^inf cos(y xi) exp(-xi^alpha) d xi` evaluated by quadrature for every alpha.
pub fn density_p1_quadrature(idx: &StableIndex, y: f64) -> Result<f64> {
    let a = idx.alpha();
    let spec = density_quad_spec();
    // Beyond this cutoff exp(-xi^alpha) < 1e-17.
    let cutoff = 39.2f64.powf(1.0 / a);
    let g = |xi: f64| if xi > cutoff { 0.0 } else { (-xi.powf(a)).exp() };
    let y = y.abs();
    let v = if y == 0.0 {
        integrate_adaptive(g, 0.0, cutoff, &spec)?
    } else if y * cutoff < 200.0 * PI {
        integrate_adaptive(|xi| g(xi) * (y * xi).cos(), 0.0, cutoff, &spec.with_max_panels(20_000))?
    } else {
        integrate_oscillatory_cos(g, y, &spec)?
    };
    Ok(v / PI)
}

/// `u_1(0) = 1 / (alpha sin(pi/alpha))`.
pub fn resolvent_u1_at_zero(idx: &StableIndex) -> f64 {
    let a = idx.alpha();
    1.0 / (a * (PI / a).sin())
}

/// q-resolvent density `u_q(x) = int_0^inf e^{-qt} p_t(x) dt`.
pub fn resolvent_u(idx: &StableIndex, q: f64, x: f64) -> Result<f64> {
    idx.require_hitting()?;
    if !(q > 0.0) || !q.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!(
            "resolvent needs q > 0 and finite x, got q={q}, x={x}"
        )));
    }
    let x = x.abs();
    if idx.is_brownian() {
        let r = q.sqrt();
        return Ok((-r * x).exp() / (2.0 * r));
    }
    let a = idx.alpha();
    let s = q.powf(1.0 / a);
    if x == 0.0 {
        return Ok(resolvent_u1_at_zero(idx) * s / q);
    }
    Ok(s / q * resolvent_u1_quadrature(idx, x * s)?)
}

/// `u_1(y) = (1/pi) int_0^inf cos(y eta) / (1 + eta^alpha) d eta` for `y != 0`, any `1 < alpha <= 2`.
pub fn resolvent_u1_quadrature(idx: &StableIndex, y: f64) -> Result<f64> {
    idx.require_hitting()?;
    let a = idx.alpha();
    let y = y.abs();
    if y == 0.0 {
        return Err(Error::Domain("cosine quadrature of u_1 needs y != 0".into()));
    }
    let spec = resolvent_quad_spec();
    let g = |eta: f64| 1.0 / (1.0 + eta.powf(a));
    // Split off [0, first zero of cos] and then sum half periods; for small y the
    // first panel is long and concentrated near the origin, so subdivide it.
    let v = if y < 1e-2 {
        let first = 0.5 * PI / y;
        let mut head = 0.0;
        let mut lo = 0.0;
        let mut hi = 1.0f64.min(first);
        while lo < first {
            head += integrate_adaptive(|eta| g(eta) * (y * eta).cos(), lo, hi, &spec)?;
            lo = hi;
            hi = (hi * 4.0).min(first);
        }
        head + integrate_oscillatory_cos_from(g, y, first, &spec)?
    } else {
        integrate_oscillatory_cos(g, y, &spec)?
    };
    Ok(v / PI)
}

/// `h_q(x) = u_q(0) - u_q(x)`.
pub fn h_q(idx: &StableIndex, q: f64, x: f64) -> Result<f64> {
    Ok(resolvent_u(idx, q, 0.0)? - resolvent_u(idx, q, x)?)
}

/// `h(1) = 1 / (2 Gamma(alpha) sin((alpha - 1) pi / 2))`.
pub fn h_one(idx: &StableIndex) -> Result<f64> {
    idx.require_hitting()?;
    let a = idx.alpha();
    Ok(1.0 / (2.0 * gamma(a) * ((a - 1.0) * PI / 2.0).sin()))
}

/// `h(x) = lim_{q -> 0} h_q(x) = h(1) |x|^(alpha - 1)`.
pub fn h_limit(idx: &StableIndex, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("h needs finite x, got {x}")));
    }
    Ok(h_one(idx)? * x.abs().powf(idx.alpha() - 1.0))
}

/// `(1/pi) int_0^inf (1 - cos x) / x^alpha dx` for `1 < alpha < 3`.
pub fn appendix_integral(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(Error::Domain(format!(
            "integral converges only for 1 < alpha < 3, got {alpha}"
        )));
    }
    let spec = QuadSpec::default().with_abs_tol(1e-13).with_rel_tol(1e-12);
    let x0 = 0.5 * PI;
    // x = x0 s^m with m = 1/(3 - alpha) makes the integrand near 0 bounded.
    let m = 1.0 / (3.0 - alpha);
    let head = integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let x = x0 * s.powf(m);
            let half = (0.5 * x).sin();
            2.0 * half * half * x.powf(-alpha) * x0 * m * s.powf(m - 1.0)
        },
        0.0,
        1.0,
        &spec,
    )?;
    let power = x0.powf(1.0 - alpha) / (alpha - 1.0);
    let osc = integrate_oscillatory_cos_from(|x: f64| x.powf(-alpha), 1.0, x0, &spec)?;
    Ok((head + power - osc) / PI)
}

/// Closed form `1 / (2 Gamma(alpha) sin((alpha - 1) pi / 2))` of [`appendix_integral`].
pub fn appendix_closed_form(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(Error::Domain(format!(
            "integral converges only for 1 < alpha < 3, got {alpha}"
        )));
    }
    Ok(1.0 / (2.0 * gamma(alpha) * ((alpha - 1.0) * PI / 2.0).sin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(a: f64) -> StableIndex {
        StableIndex::new(a).unwrap()
    }

    #[test]
    fn index_domain() {
        assert!(StableIndex::new(0.0).is_err());
        assert!(StableIndex::new(2.5).is_err());
        assert!(StableIndex::hitting(1.0).is_err());
        assert!(StableIndex::hitting(1.5).is_ok());
        assert!((idx(1.5).gamma() * 1.5 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_at_origin() {
        for a in [0.5, 1.0, 1.3, 1.5, 1.9] {
            let v = density_p(&idx(a), 1.0, 0.0).unwrap();
            let expect = density_p1_at_zero(&idx(a));
            assert!((v - expect).abs() < 1e-11, "alpha={a}: {v} vs {expect}");
        }
    }

    #[test]
    fn cauchy_density() {
        for x in [0.0, 0.3, 1.0, 4.0, 30.0] {
            let v = density_p(&idx(1.0), 1.0, x).unwrap();
            let expect = 1.0 / (PI * (1.0 + x * x));
            assert!((v - expect).abs() < 1e-11, "x={x}: {v} vs {expect}");
        }
    }

    #[test]
    fn brownian_quadrature_matches_closed_form() {
        for x in [0.0, 0.5, 1.0, 3.0] {
            let v = density_p1_quadrature(&idx(2.0), x).unwrap();
            let expect = (-x * x / 4.0).exp() / (2.0 * PI.sqrt());
            assert!((v - expect).abs() < 1e-12, "x={x}");
        }
        for y in [0.1, 1.0, 2.5] {
            let v = resolvent_u1_quadrature(&idx(2.0), y).unwrap();
            let expect = 0.5 * (-y).exp();
            assert!((v - expect).abs() < 1e-11, "y={y}: {v} vs {expect}");
        }
    }

    #[test]
    fn resolvent_closed_forms() {
        let b = idx(2.0);
        assert!((resolvent_u(&b, 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
        let a = idx(1.5);
        let u0 = resolvent_u(&a, 1.0, 0.0).unwrap();
        let expect = gamma(1.0 - 1.0 / 1.5) * gamma(1.0 / 1.5) / (1.5 * PI);
        assert!((u0 - expect).abs() < 1e-12);
    }

    #[test]
    fn resolvent_small_argument_tends_to_origin_value() {
        let a = idx(1.5);
        let u0 = resolvent_u1_at_zero(&a);
        let near = resolvent_u1_quadrature(&a, 1e-5).unwrap();
        // u_1(0) - u_1(y) ~ h(1) y^(alpha - 1)
        let h = h_one(&a).unwrap() * 1e-5f64.powf(0.5);
        assert!((u0 - near - h).abs() < 1e-5 * h.max(1e-12) + 1e-9, "{u0} {near} {h}");
    }

    #[test]
    fn appendix_matches_closed_form() {
        for a in [1.1, 1.5, 2.0, 2.5, 2.9] {
            let v = appendix_integral(a).unwrap();
            let c = appendix_closed_form(a).unwrap();
            assert!((v - c).abs() < 1e-9 * c.max(1.0), "alpha={a}: {v} vs {c}");
        }
    }

    #[test]
    fn h_at_brownian() {
        assert!((h_limit(&idx(2.0), 3.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((h_one(&idx(2.0)).unwrap() - 0.5).abs() < 1e-15);
    }
}
