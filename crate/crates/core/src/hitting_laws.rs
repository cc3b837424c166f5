//! Laplace transforms of first hitting times `T`, last exit times `G` and
//! the post-exit durations `Xi = T - G` for `X` and `|X|`, together with the
//! excursion-measure quantities they are built from.
//!
//! Everything here is algebra over `u_q` and `h`; see [`crate::resolvent`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::LaplaceTransform;
use crate::resolvent::{h_limit, resolvent_u, StableIndex};

/// Inputs shared by the hitting-law evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingQuery {
    pub idx: StableIndex,
    pub q: f64,
    pub r: Option<f64>,
    pub x: f64,
    pub a: f64,
    pub b: Option<f64>,
}

impl HittingQuery {
    pub fn new(idx: StableIndex, q: f64, x: f64, a: f64) -> Result<Self> {
        let query = HittingQuery {
            idx,
            q,
            r: None,
            x,
            a,
            b: None,
        };
        query.validate()?;
        Ok(query)
    }

    pub fn with_b(mut self, b: f64) -> Result<Self> {
        self.b = Some(b);
        self.validate()?;
        Ok(self)
    }

    pub fn with_r(mut self, r: f64) -> Result<Self> {
        self.r = Some(r);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.idx.require_hitting()?;
        check_rate("q", self.q)?;
        if let Some(r) = self.r {
            check_rate("r", r)?;
        }
        if !self.x.is_finite() || !self.a.is_finite() {
            return Err(Error::Domain(format!(
                "positions must be finite (x={}, a={})",
                self.x, self.a
            )));
        }
        if let Some(b) = self.b {
            if !b.is_finite() || b == self.a {
                return Err(Error::Domain(format!(
                    "second target must be finite and differ from a, got b={b}"
                )));
            }
        }
        Ok(())
    }

    pub fn b(&self) -> Result<f64> {
        self.b
            .ok_or_else(|| Error::Domain("query needs a second target b".into()))
    }

    pub fn r(&self) -> Result<f64> {
        self.r
            .ok_or_else(|| Error::Domain("query needs a second rate r".into()))
    }
}

fn check_rate(name: &str, q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "rate {name} must be positive and finite, got {q}"
        )))
    }
}

fn check_level(a: f64) -> Result<()> {
    if a != 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("level must be finite and nonzero, got {a}")))
    }
}

fn positive_denominator(v: f64, what: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::DegenerateDenominator(format!("{what} = {v}")))
    }
}

/// `u_q` evaluator with the value at the origin cached.
struct Potential<'a> {
    idx: &'a StableIndex,
    q: f64,
    u0: f64,
}

impl<'a> Potential<'a> {
    fn new(idx: &'a StableIndex, q: f64) -> Result<Self> {
        idx.require_hitting()?;
        check_rate("q", q)?;
        Ok(Potential {
            idx,
            q,
            u0: resolvent_u(idx, q, 0.0)?,
        })
    }

    fn u(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            Ok(self.u0)
        } else {
            resolvent_u(self.idx, self.q, x)
        }
    }

    /// `V_q(a) = u(0)^2 + u(0) u(2a) - 2 u(a)^2`.
    fn v(&self, ua: f64, u2a: f64) -> Result<f64> {
        positive_denominator(self.u0 * self.u0 + self.u0 * u2a - 2.0 * ua * ua, "V_q(a)")
    }
}

/// `E_x exp(-q T_a) = u_q(x - a) / u_q(0)`.
pub fn lt_t_point(idx: &StableIndex, q: f64, x: f64, a: f64) -> Result<f64> {
    let p = Potential::new(idx, q)?;
    Ok(p.u(x - a)? / p.u0)
}

/// Transform of the first hitting time of `{a, b}`.
pub fn lt_t_two_points(idx: &StableIndex, q: f64, x: f64, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Err(Error::Domain("two-point target needs a != b".into()));
    }
    let p = Potential::new(idx, q)?;
    let den = positive_denominator(p.u0 + p.u(a - b)?, "u_q(0) + u_q(a - b)")?;
    Ok((p.u(x - a)? + p.u(x - b)?) / den)
}

/// `E_x[exp(-q T_a); T_a < T_b]`.
pub fn lt_t_a_before_b(idx: &StableIndex, q: f64, x: f64, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Err(Error::Domain("ordered hitting needs a != b".into()));
    }
    let p = Potential::new(idx, q)?;
    let uab = p.u(a - b)?;
    let den = positive_denominator(p.u0 * p.u0 - uab * uab, "u_q(0)^2 - u_q(a - b)^2")?;
    Ok((p.u0 * p.u(x - a)? - uab * p.u(x - b)?) / den)
}

/// `P_x(T_a < T_b)`.
pub fn prob_hit_a_before_b(idx: &StableIndex, x: f64, a: f64, b: f64) -> Result<f64> {
    idx.require_hitting()?;
    if a == b {
        return Err(Error::Domain("ordered hitting needs a != b".into()));
    }
    let e = idx.alpha() - 1.0;
    let num = (x - b).abs().powf(e) - (x - a).abs().powf(e);
    Ok(0.5 * (1.0 + num / (a - b).abs().powf(e)))
}

/// Transform of `G_a`, the last zero of `X` before `T_a` under `P_0`.
pub fn lt_g_point(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let h = positive_denominator(h_limit(idx, a)?, "h(a)")?;
    Ok((p.u0 * p.u0 - ua * ua) / (2.0 * h * p.u0))
}

/// Transform of `Xi_a = T_a - G_a`.
pub fn lt_xi_point(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let h = h_limit(idx, a)?;
    let den = positive_denominator(p.u0 * p.u0 - ua * ua, "u_q(0)^2 - u_q(a)^2")?;
    Ok(ua * 2.0 * h / den)
}

/// Ito-measure mass of excursions reaching `a`, `1 / (2 h(a))`.
pub fn exc_n_hits(idx: &StableIndex, a: f64) -> Result<f64> {
    check_level(a)?;
    Ok(1.0 / positive_denominator(2.0 * h_limit(idx, a)?, "2 h(a)")?)
}

/// `n[exp(-q T_a - r (zeta - T_a)); T_a < zeta]`.
pub fn exc_n_joint(idx: &StableIndex, q: f64, r: f64, a: f64) -> Result<f64> {
    check_rate("r", r)?;
    let pr = Potential::new(idx, r)?;
    Ok(pr.u(a)? / pr.u0 * exc_n_hitting_lt(idx, q, a)?)
}

/// `n[exp(-q T_a); T_a < zeta] = u_q(a) / (u_q(0)^2 - u_q(a)^2)`, the `r -> 0` form of [`exc_n_joint`].
pub fn exc_n_hitting_lt(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let den = positive_denominator(p.u0 * p.u0 - ua * ua, "u_q(0)^2 - u_q(a)^2")?;
    Ok(ua / den)
}

/// `n[1 - exp(-q zeta); T_a > zeta]`, from the total mass of `1 - exp(-q zeta)`
/// minus its part on `{T_a < zeta}`.
pub fn exc_n_lifetime_without_hit(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    let p = Potential::new(idx, q)?;
    Ok(1.0 / p.u0 - exc_n_hits(idx, a)? + exc_n_joint(idx, q, q, a)?)
}

/// Transform of `T_a(|X|)`, the first hitting time of `{a, -a}` from 0.
pub fn lt_t_abs(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let den = positive_denominator(p.u0 + p.u(2.0 * a)?, "u_q(0) + u_q(2a)")?;
    Ok(2.0 * p.u(a)? / den)
}

/// Alternating series `2 sum_n (-1)^n phi_a phi_2a^n`; returns the sum of
/// `n_terms` terms and the interval spanned by the last two partial sums.
pub fn lt_t_abs_series(idx: &StableIndex, q: f64, a: f64, n_terms: usize) -> Result<(f64, (f64, f64))> {
    if n_terms < 2 {
        return Err(Error::Domain(format!("series needs at least two terms, got {n_terms}")));
    }
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let phi_a = p.u(a)? / p.u0;
    let ratio = p.u(2.0 * a)? / p.u0;
    let mut term = 2.0 * phi_a;
    let mut prev = 0.0;
    let mut sum = 0.0;
    for _ in 0..n_terms {
        prev = sum;
        sum += term;
        term *= -ratio;
    }
    Ok((sum, (prev.min(sum), prev.max(sum))))
}

/// Both evaluations of `D_n`: the gap
/// `phi_{(2n+1)a} - phi_{(2n-1)a} phi_{2a}` and the ordered-hitting form
/// `phi_{(2n+1)a before (2n-1)a} (1 - phi_{2a}^2)`.
pub fn dn_gap_forms(idx: &StableIndex, q: f64, a: f64, n: u32) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::Domain("D_n is defined for n >= 1".into()));
    }
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let nf = n as f64;
    let far = (2.0 * nf + 1.0) * a;
    let near = (2.0 * nf - 1.0) * a;
    let u_far = p.u(far)?;
    let u_near = p.u(near)?;
    let u_2a = p.u(2.0 * a)?;
    let phi = |u: f64| u / p.u0;
    let first = phi(u_far) - phi(u_near) * phi(u_2a);
    // from 0, hit `far` before `near`; far - near = 2a
    let den = positive_denominator(p.u0 * p.u0 - u_2a * u_2a, "u_q(0)^2 - u_q(2a)^2")?;
    let ordered = (p.u0 * u_far - u_2a * u_near) / den;
    let second = ordered * (1.0 - phi(u_2a) * phi(u_2a));
    Ok((first, second))
}

pub const DN_AGREEMENT: f64 = 1e-9;

pub fn dn_gap(idx: &StableIndex, q: f64, a: f64, n: u32) -> Result<f64> {
    let (first, second) = dn_gap_forms(idx, q, a, n)?;
    if (first - second).abs() > DN_AGREEMENT {
        return Err(Error::Consistency {
            context: format!("D_{n} at alpha={}, q={q}, a={a}", idx.alpha()),
            first,
            second,
        });
    }
    Ok(0.5 * (first + second))
}

/// `V_q(a) = u_q(0)^2 + u_q(0) u_q(2a) - 2 u_q(a)^2`.
pub fn v_q(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    p.v(p.u(a)?, p.u(2.0 * a)?)
}

/// Coefficients `(C_{0 before a,-a}, C_{a before 0,-a})` of the three-point transform.
pub fn three_point_coefficients(idx: &StableIndex, q: f64, a: f64) -> Result<(f64, f64)> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let u2a = p.u(2.0 * a)?;
    let v = p.v(ua, u2a)?;
    Ok(((p.u0 + u2a - 2.0 * ua) / v, (p.u0 - ua) / v))
}

/// Transform of the first hitting time of `{0, a, -a}` from `x`.
pub fn lt_t_three(idx: &StableIndex, q: f64, x: f64, a: f64) -> Result<f64> {
    let (c0, ca) = three_point_coefficients(idx, q, a)?;
    let p = Potential::new(idx, q)?;
    Ok(c0 * p.u(x)? + ca * (p.u(x - a)? + p.u(x + a)?))
}

/// `E_x[exp(-q T_{a,-a}); T_{a,-a} < T_0]`.
pub fn lt_t_pm_a_before_0(idx: &StableIndex, q: f64, x: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let v = p.v(ua, p.u(2.0 * a)?)?;
    Ok((p.u0 * (p.u(x - a)? + p.u(x + a)?) - 2.0 * ua * p.u(x)?) / v)
}

/// The same quantity assembled from the two- and three-point transforms.
pub fn lt_t_pm_a_before_0_assembled(idx: &StableIndex, q: f64, x: f64, a: f64) -> Result<f64> {
    let from_x = lt_t_two_points(idx, q, x, a, -a)?;
    let from_0 = lt_t_two_points(idx, q, 0.0, a, -a)?;
    let three = lt_t_three(idx, q, x, a)?;
    let den = positive_denominator(1.0 - from_0, "1 - phi_{0 -> a,-a}")?;
    Ok((from_x - from_0 * three) / den)
}

fn abs_h_combination(idx: &StableIndex, a: f64) -> Result<f64> {
    positive_denominator(4.0 * h_limit(idx, a)? - h_limit(idx, 2.0 * a)?, "4h(a) - h(2a)")
}

pub fn lt_g_abs(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let u2a = p.u(2.0 * a)?;
    let v = p.v(ua, u2a)?;
    Ok(2.0 * v / ((p.u0 + u2a) * abs_h_combination(idx, a)?))
}

pub fn lt_xi_abs(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    check_level(a)?;
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    let v = p.v(ua, p.u(2.0 * a)?)?;
    Ok(ua * abs_h_combination(idx, a)? / v)
}

/// Excursion-measure mass of excursions of `|X|` away from 0 reaching `a`.
pub fn exc_m_hits(idx: &StableIndex, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("level must be positive, got {a}")));
    }
    Ok(2.0 / abs_h_combination(idx, a)?)
}

/// `m[exp(-q T_a) ; T_a < zeta] = 2 u_q(a) / V_q(a)`.
pub fn exc_m_hitting_lt(idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("level must be positive, got {a}")));
    }
    let p = Potential::new(idx, q)?;
    let ua = p.u(a)?;
    Ok(2.0 * ua / p.v(ua, p.u(2.0 * a)?)?)
}

pub fn exc_m_joint(idx: &StableIndex, q: f64, r: f64, a: f64) -> Result<f64> {
    check_rate("r", r)?;
    let pr = Potential::new(idx, r)?;
    Ok(pr.u(a)? / pr.u0 * exc_m_hitting_lt(idx, q, a)?)
}

/// The six laws started from 0 whose transforms are known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HittingLaw {
    TPoint,
    GPoint,
    XiPoint,
    TAbs,
    GAbs,
    XiAbs,
}

impl HittingLaw {
    pub const ALL: [HittingLaw; 6] = [
        HittingLaw::TPoint,
        HittingLaw::GPoint,
        HittingLaw::XiPoint,
        HittingLaw::TAbs,
        HittingLaw::GAbs,
        HittingLaw::XiAbs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HittingLaw::TPoint => "lt-T",
            HittingLaw::GPoint => "lt-G",
            HittingLaw::XiPoint => "lt-Xi",
            HittingLaw::TAbs => "lt-T-abs",
            HittingLaw::GAbs => "lt-G-abs",
            HittingLaw::XiAbs => "lt-Xi-abs",
        }
    }

    pub fn eval(self, idx: &StableIndex, q: f64, a: f64) -> Result<f64> {
        match self {
            HittingLaw::TPoint => lt_t_point(idx, q, 0.0, a),
            HittingLaw::GPoint => lt_g_point(idx, q, a),
            HittingLaw::XiPoint => lt_xi_point(idx, q, a),
            HittingLaw::TAbs => lt_t_abs(idx, q, a),
            HittingLaw::GAbs => lt_g_abs(idx, q, a),
            HittingLaw::XiAbs => lt_xi_abs(idx, q, a),
        }
    }

    /// Transform handle for inversion and table sampling.
    pub fn transform(self, idx: StableIndex, a: f64) -> Result<LaplaceTransform> {
        idx.require_hitting()?;
        check_level(a)?;
        let label = format!("{}(alpha={}, a={a})", self.name(), idx.alpha());
        Ok(LaplaceTransform::new(label, f64::MIN_POSITIVE, move |q| {
            self.eval(&idx, q, a)
        }))
    }
}

impl fmt::Display for HittingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HittingLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HittingLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown transform {s:?}")))
    }
}

/// Estimate of `lim_{q -> 0} f(q)` from `q = 1e-2, 1e-4, 1e-6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QLimit {
    pub samples: [f64; 3],
    /// Aitken extrapolation of the three samples (the last sample when the
    /// second difference vanishes).
    pub value: f64,
    /// Whether successive differences shrink, as they must for a convergent limit.
    pub converging: bool,
}

pub const Q_LIMIT_GRID: [f64; 3] = [1e-2, 1e-4, 1e-6];

pub fn q_limit<F: Fn(f64) -> Result<f64>>(f: F) -> Result<QLimit> {
    let s = [f(Q_LIMIT_GRID[0])?, f(Q_LIMIT_GRID[1])?, f(Q_LIMIT_GRID[2])?];
    let d1 = s[1] - s[0];
    let d2 = s[2] - s[1];
    let second = d2 - d1;
    let scale = s[2].abs().max(1e-300);
    let value = if second.abs() > 1e-14 * scale {
        s[2] - d2 * d2 / second
    } else {
        s[2]
    };
    Ok(QLimit {
        samples: s,
        value,
        converging: d2.abs() <= d1.abs() || d2.abs() <= 1e-12 * scale,
    })
}

/// Like [`q_limit`], for samples whose error expands in powers of `q^rho`:
/// two Richardson steps remove the `q^rho` and `q^(2 rho)` terms.
pub fn q_limit_with_exponent<F: Fn(f64) -> Result<f64>>(f: F, rho: f64) -> Result<QLimit> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!(
            "convergence exponent must be positive, got {rho}"
        )));
    }
    let s = [f(Q_LIMIT_GRID[0])?, f(Q_LIMIT_GRID[1])?, f(Q_LIMIT_GRID[2])?];
    let r = (Q_LIMIT_GRID[1] / Q_LIMIT_GRID[0]).powf(rho);
    let first = |a: f64, b: f64| (b - r * a) / (1.0 - r);
    let (r0, r1) = (first(s[0], s[1]), first(s[1], s[2]));
    let r2 = r * r;
    let d1 = s[1] - s[0];
    let d2 = s[2] - s[1];
    Ok(QLimit {
        samples: s,
        value: (r1 - r2 * r0) / (1.0 - r2),
        converging: d2.abs() <= d1.abs() || d2.abs() <= 1e-12 * s[2].abs().max(1e-300),
    })
}

/// Closed forms at `alpha = 2`, written for a standard Brownian motion `B`
/// and mapped through `X_2 = sqrt(2) B`.
pub mod brownian {
    use std::f64::consts::SQRT_2;

    /// `X_2 = SCALE * B`.
    pub const SCALE: f64 = SQRT_2;

    /// A level `a` of `X_2` is the level `a / sqrt(2)` of `B`.
    pub fn level(a: f64) -> f64 {
        a / SCALE
    }

    fn theta(q: f64, a: f64) -> f64 {
        (2.0 * q).sqrt() * level(a).abs()
    }

    pub fn lt_t_point(q: f64, a: f64) -> f64 {
        (-theta(q, a)).exp()
    }

    pub fn lt_g_point(q: f64, a: f64) -> f64 {
        let th = theta(q, a);
        -(-2.0 * th).exp_m1() / (2.0 * th)
    }

    /// Transform of `Xi_a = T_a - G_a`.
    pub fn lt_xi_point(q: f64, a: f64) -> f64 {
        let th = theta(q, a);
        th / th.sinh()
    }

    pub fn lt_t_abs(q: f64, a: f64) -> f64 {
        1.0 / theta(q, a).cosh()
    }

    pub fn lt_g_abs(q: f64, a: f64) -> f64 {
        let th = theta(q, a);
        th.tanh() / th
    }

    pub fn lt_xi_abs(q: f64, a: f64) -> f64 {
        lt_xi_point(q, a)
    }

    /// Two-point transform from `x` with `a < x < b`.
    pub fn lt_t_two_points(q: f64, x: f64, a: f64, b: f64) -> f64 {
        let r = (2.0 * q).sqrt();
        (r * level(x - 0.5 * (a + b))).cosh() / (r * level(0.5 * (b - a))).cosh()
    }

    /// `E_x[exp(-q T_a); T_a < T_b]` with `a < x < b`.
    pub fn lt_t_a_before_b(q: f64, x: f64, a: f64, b: f64) -> f64 {
        let r = (2.0 * q).sqrt();
        (r * level(b - x)).sinh() / (r * level(b - a)).sinh()
    }

    /// `h(x) = |x| / 2`.
    pub fn h(x: f64) -> f64 {
        0.5 * x.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(a: f64) -> StableIndex {
        StableIndex::hitting(a).unwrap()
    }

    #[test]
    fn brownian_reductions() {
        let b = idx(2.0);
        assert!((lt_g_point(&b, 1.0, 1.0).unwrap() - 0.5 * (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((lt_xi_point(&b, 1.0, 1.0).unwrap() - 1.0 / 1.0f64.sinh()).abs() < 1e-15);
        assert!((lt_t_abs(&b, 1.0, 1.0).unwrap() - 1.0 / 1.0f64.cosh()).abs() < 1e-15);
        assert!((lt_g_abs(&b, 1.0, 1.0).unwrap() - 1.0f64.tanh()).abs() < 1e-15);
        assert!((lt_xi_abs(&b, 1.0, 1.0).unwrap() - 1.0 / 1.0f64.sinh()).abs() < 1e-14);
        assert!((exc_n_hits(&b, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((exc_m_hits(&b, 1.0).unwrap() - 2.0).abs() < 1e-15);
        for n in 1..5 {
            assert!(dn_gap(&b, 1.3, 0.7, n).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn getoor_examples() {
        let s = idx(1.5);
        assert!((prob_hit_a_before_b(&s, 0.0, 1.0, -1.0).unwrap() - 0.5).abs() < 1e-15);
        let v = prob_hit_a_before_b(&s, 0.0, 1.0, 2.0).unwrap();
        assert!((v - 0.5 * 2f64.sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn start_on_target() {
        let s = idx(1.5);
        assert_eq!(lt_t_point(&s, 1.0, 0.4, 0.4).unwrap(), 1.0);
        assert!((lt_t_two_points(&s, 1.0, 2.0, 0.5, 2.0).unwrap() - 1.0).abs() < 1e-14);
        for x in [0.0, 1.0, -1.0] {
            assert!((lt_t_three(&s, 1.0, x, 1.0).unwrap() - 1.0).abs() < 1e-12, "{x}");
        }
        assert!((lt_t_pm_a_before_0(&s, 1.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        assert!(lt_t_point(&StableIndex::new(1.0).unwrap(), 1.0, 0.0, 1.0).is_err());
        assert!(lt_t_point(&idx(1.5), 0.0, 0.0, 1.0).is_err());
        assert!(lt_g_point(&idx(1.5), 1.0, 0.0).is_err());
        assert!(lt_t_two_points(&idx(1.5), 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(HittingQuery::new(idx(1.5), 1.0, 0.0, 1.0).unwrap().with_b(1.0).is_err());
        assert!(exc_m_hits(&idx(1.5), -1.0).is_err());
    }

    #[test]
    fn q_limit_of_getoor() {
        let s = idx(1.5);
        let lim = q_limit(|q| lt_t_a_before_b(&s, q, 0.0, 1.0, 2.0)).unwrap();
        let getoor = prob_hit_a_before_b(&s, 0.0, 1.0, 2.0).unwrap();
        assert!(lim.converging);
        assert!((lim.value - getoor).abs() < 1e-3, "{lim:?} vs {getoor}");
    }
}
