use std::f64::consts::{PI, SQRT_2};

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Beta, Distribution, Exp1, Gamma, StandardNormal};

use super::rng::RandomStream;
use crate::error::{Error, Result};
use crate::resolvent::StableIndex;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn gamma_dist(a: f64) -> Result<Gamma<f64>> {
    Gamma::new(positive("gamma shape", a)?, 1.0).map_err(|e| Error::Domain(e.to_string()))
}

fn beta_dist(a: f64, b: f64) -> Result<Beta<f64>> {
    Beta::new(positive("beta shape a", a)?, positive("beta shape b", b)?).map_err(|e| Error::Domain(e.to_string()))
}

pub fn sample_gamma(a: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(gamma_dist(a)?.sample(s))
}

pub fn sample_beta(a: f64, b: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(beta_dist(a, b)?.sample(s))
}

pub fn sample_exponential(s: &mut RandomStream) -> f64 {
    Exp1.sample(s)
}

/// Uniform on the open interval `(0, 1)`.
pub fn sample_uniform(s: &mut RandomStream) -> f64 {
    s.sample(Open01)
}

pub fn sample_bernoulli_sign(s: &mut RandomStream) -> f64 {
    if s.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// `X_alpha(1)` with `E exp(i theta X) = exp(-|theta|^alpha)`, by the
/// Chambers-Mallows-Stuck transform.
pub fn sample_sym_stable(alpha: f64, s: &mut RandomStream) -> Result<f64> {
    StableIndex::new(alpha)?;
    Ok(sym_stable_unchecked(alpha, s))
}

fn sym_stable_unchecked(alpha: f64, s: &mut RandomStream) -> f64 {
    if alpha == 2.0 {
        let z: f64 = StandardNormal.sample(s);
        return SQRT_2 * z;
    }
    let v = PI * (sample_uniform(s) - 0.5);
    if alpha == 1.0 {
        return v.tan();
    }
    let w = sample_exponential(s);
    (alpha * v).sin() / v.cos().powf(1.0 / alpha) * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// `ln K(u)` for Kanter's function
/// `K(u) = sin((1-b) pi u) sin(b pi u)^(b/(1-b)) / sin(pi u)^(1/(1-b))`.
pub fn kanter_ln(beta: f64, u: f64) -> f64 {
    let r = 1.0 / (1.0 - beta);
    ((1.0 - beta) * PI * u).sin().ln() + beta * r * (beta * PI * u).sin().ln() - r * (PI * u).sin().ln()
}

/// `K(0+) = (1 - b) b^(b / (1 - b))`, the minimum of Kanter's function.
pub fn kanter_at_zero(beta: f64) -> f64 {
    (1.0 - beta) * beta.powf(beta / (1.0 - beta))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "one-sided stable index must lie in (0, 1), got {beta}"
        )))
    }
}

/// `T_beta` with `E exp(-q T) = exp(-q^beta)`: `(K(U) / E)^((1-b)/b)`.
pub fn sample_unilateral_stable(beta: f64, s: &mut RandomStream) -> Result<f64> {
    check_beta(beta)?;
    let c = (1.0 - beta) / beta;
    let u = sample_uniform(s);
    let e = sample_exponential(s);
    Ok((c * (kanter_ln(beta, u) - e.ln())).exp())
}

/// Sampler of `T'_beta`, the law of `T_beta` reweighted by `t^(-1/2)`.
///
/// In Kanter's representation the weight `(E / K(U))^(c/2)` factorises, so
/// `T' = (K(U') / E')^c` with `E' ~ Gamma(1 + c/2)` and `U'` of density
/// proportional to `K^(-c/2)`, drawn by rejection against its value at 0.
#[derive(Debug, Clone)]
pub struct SizeBiasedStable {
    beta: f64,
    c: f64,
    ln_k0: f64,
    shape: Gamma<f64>,
}

impl SizeBiasedStable {
    pub fn new(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        let c = (1.0 - beta) / beta;
        Ok(SizeBiasedStable {
            beta,
            c,
            ln_k0: kanter_at_zero(beta).ln(),
            shape: gamma_dist(1.0 + 0.5 * c)?,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        let half = 0.5 * self.c;
        let ln_k = loop {
            let u = sample_uniform(s);
            let ln_k = kanter_ln(self.beta, u);
            let ln_accept = half * (self.ln_k0 - ln_k);
            if sample_uniform(s).ln() <= ln_accept {
                break ln_k;
            }
        };
        let e: f64 = self.shape.sample(s);
        (self.c * (ln_k - e.ln())).exp()
    }
}

pub fn sample_size_biased_stable(beta: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(SizeBiasedStable::new(beta)?.sample(s))
}

/// `eps (G_{1/alpha} / G'_{1 - 1/alpha})^(1/alpha)`, density proportional to `1 / (1 + |x|^alpha)`.
#[derive(Debug, Clone)]
pub struct AlphaCauchy {
    alpha: f64,
    num: Gamma<f64>,
    den: Gamma<f64>,
}

impl AlphaCauchy {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!("alpha-Cauchy law needs alpha > 1, got {alpha}")));
        }
        Ok(AlphaCauchy {
            alpha,
            num: gamma_dist(1.0 / alpha)?,
            den: gamma_dist(1.0 - 1.0 / alpha)?,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        let g: f64 = self.num.sample(s);
        let h: f64 = self.den.sample(s);
        sample_bernoulli_sign(s) * (g / h).powf(1.0 / self.alpha)
    }
}

pub fn sample_alpha_cauchy(alpha: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(AlphaCauchy::new(alpha)?.sample(s))
}

/// `R_alpha = 2 sqrt(E T'_{alpha/2})`; at `alpha = 2` it is `2 sqrt(E)`.
#[derive(Debug, Clone)]
pub struct AlphaRayleigh {
    tilted: Option<SizeBiasedStable>,
}

impl AlphaRayleigh {
    pub fn new(alpha: f64) -> Result<Self> {
        StableIndex::new(alpha)?;
        let tilted = if alpha == 2.0 {
            None
        } else {
            Some(SizeBiasedStable::new(0.5 * alpha)?)
        };
        Ok(AlphaRayleigh { tilted })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        let e = sample_exponential(s);
        match &self.tilted {
            None => 2.0 * e.sqrt(),
            Some(t) => 2.0 * (e * t.sample(s)).sqrt(),
        }
    }
}

pub fn sample_alpha_rayleigh(alpha: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(AlphaRayleigh::new(alpha)?.sample(s))
}

/// Linnik variable `E^(1/alpha) X_alpha(1)`, characteristic function `1 / (1 + |theta|^alpha)`.
pub fn sample_linnik(alpha: f64, s: &mut RandomStream) -> Result<f64> {
    StableIndex::new(alpha)?;
    let e = sample_exponential(s);
    Ok(e.powf(1.0 / alpha) * sym_stable_unchecked(alpha, s))
}

/// First hitting time of `a` from 0: `|a|^alpha / (R_alpha^alpha B_{1-gamma, gamma})`.
#[derive(Debug, Clone)]
pub struct HittingTime {
    alpha: f64,
    scale: f64,
    rayleigh: AlphaRayleigh,
    beta: Beta<f64>,
}

impl HittingTime {
    pub fn new(idx: &StableIndex, a: f64) -> Result<Self> {
        idx.require_hitting()?;
        if a == 0.0 || !a.is_finite() {
            return Err(Error::Domain(format!(
                "target level must be finite and nonzero, got {a}"
            )));
        }
        let g = idx.gamma();
        Ok(HittingTime {
            alpha: idx.alpha(),
            scale: a.abs().powf(idx.alpha()),
            rayleigh: AlphaRayleigh::new(idx.alpha())?,
            beta: beta_dist(1.0 - g, g)?,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        let r = self.rayleigh.sample(s);
        let b: f64 = self.beta.sample(s);
        self.scale / (r.powf(self.alpha) * b)
    }
}

pub fn sample_t_point(idx: &StableIndex, a: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(HittingTime::new(idx, a)?.sample(s))
}

/// Overshoot over `a` at first passage above `a`: `a G_{1-alpha/2} / G'_{alpha/2}`, zero at `alpha = 2`.
#[derive(Debug, Clone)]
pub struct Overshoot {
    a: f64,
    dists: Option<(Gamma<f64>, Gamma<f64>)>,
}

impl Overshoot {
    pub fn new(alpha: f64, a: f64) -> Result<Self> {
        StableIndex::new(alpha)?;
        positive("level a", a)?;
        let dists = if alpha == 2.0 {
            None
        } else {
            Some((gamma_dist(1.0 - 0.5 * alpha)?, gamma_dist(0.5 * alpha)?))
        };
        Ok(Overshoot { a, dists })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        match &self.dists {
            None => 0.0,
            Some((num, den)) => {
                let g: f64 = num.sample(s);
                let h: f64 = den.sample(s);
                self.a * g / h
            }
        }
    }
}

pub fn sample_overshoot(alpha: f64, a: f64, s: &mut RandomStream) -> Result<f64> {
    Ok(Overshoot::new(alpha, a)?.sample(s))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "excursion index must lie in (0, 1), got {gamma}"
        )))
    }
}

/// Age and duration `(Xi_1, Delta_1) = (B, B / U^(1/gamma))` of the excursion straddling time 1.
#[derive(Debug, Clone)]
pub struct ExcursionPair {
    gamma: f64,
    beta: Beta<f64>,
}

impl ExcursionPair {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(ExcursionPair {
            gamma,
            beta: beta_dist(1.0 - gamma, gamma)?,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> (f64, f64) {
        let b: f64 = self.beta.sample(s);
        let u = sample_uniform(s);
        (b, b / u.powf(1.0 / self.gamma))
    }
}

pub fn sample_excursion_triplet(gamma: f64, s: &mut RandomStream) -> Result<(f64, f64)> {
    Ok(ExcursionPair::new(gamma)?.sample(s))
}

/// `(G, Xi, Delta) = (G_gamma, G'_{1-gamma}, G'_{1-gamma} / U^(1/gamma))` at an exponential time.
#[derive(Debug, Clone)]
pub struct ExcursionExpTriplet {
    gamma: f64,
    g: Gamma<f64>,
    xi: Gamma<f64>,
}

impl ExcursionExpTriplet {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(ExcursionExpTriplet {
            gamma,
            g: gamma_dist(gamma)?,
            xi: gamma_dist(1.0 - gamma)?,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> (f64, f64, f64) {
        let g: f64 = self.g.sample(s);
        let xi: f64 = self.xi.sample(s);
        let u = sample_uniform(s);
        (g, xi, xi / u.powf(1.0 / self.gamma))
    }
}

pub fn sample_excursion_exp_triplet(gamma: f64, s: &mut RandomStream) -> Result<(f64, f64, f64)> {
    Ok(ExcursionExpTriplet::new(gamma)?.sample(s))
}

/// `psi'(z) = sum_{j >= 0} 1 / (z + j)^2`.
pub fn trigamma(z: f64) -> f64 {
    let mut acc = 0.0;
    let mut z = z;
    while z < 16.0 {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let r = 1.0 / z;
    let r2 = r * r;
    acc + r + 0.5 * r2 + r * r2 * (1.0 / 6.0 - r2 * (1.0 / 30.0 - r2 * (1.0 / 42.0 - r2 / 30.0)))
}

/// `sum_{j >= 0} 1 / (z + j)^4 = psi'''(z) / 6`.
pub fn quartic_zeta_tail(z: f64) -> f64 {
    let mut acc = 0.0;
    let mut z = z;
    while z < 16.0 {
        acc += 1.0 / (z * z * z * z);
        z += 1.0;
    }
    // Euler-Maclaurin: 1/(3z^3) + 1/(2z^4) + 1/(3z^5) - 1/(6z^7) + 2/(9z^9) - 1/(2z^11)
    let r = 1.0 / z;
    let r2 = r * r;
    acc + r * r2 * (1.0 / 3.0 + 0.5 * r + r2 * (1.0 / 3.0 - r2 * (1.0 / 6.0 - r2 * (2.0 / 9.0 - 0.5 * r2))))
}

pub const DEFAULT_SERIES_TERMS: usize = 10_000;

/// `(2 / pi^2) sum_j gamma_j(t) / (j + a)^2`, truncated after `n_terms` with
/// the remainder replaced by its mean.
#[derive(Debug, Clone)]
pub struct GammaSeries {
    a: f64,
    n_terms: usize,
    shape: Gamma<f64>,
    tail_mean: f64,
    t: f64,
}

impl GammaSeries {
    pub fn new(a: f64, t: f64, n_terms: usize) -> Result<Self> {
        positive("a", a)?;
        positive("t", t)?;
        if n_terms < 1 {
            return Err(Error::Domain("gamma series needs at least one term".into()));
        }
        Ok(GammaSeries {
            a,
            n_terms,
            shape: gamma_dist(t)?,
            tail_mean: t * 2.0 / (PI * PI) * trigamma(n_terms as f64 + a),
            t,
        })
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        let mut acc = 0.0;
        for j in 0..self.n_terms {
            let g: f64 = self.shape.sample(s);
            let d = j as f64 + self.a;
            acc += g / (d * d);
        }
        acc * 2.0 / (PI * PI) + self.tail_mean
    }

    /// Exact mean `t (2 / pi^2) psi'(a)`.
    pub fn mean(&self) -> f64 {
        self.t * 2.0 / (PI * PI) * trigamma(self.a)
    }

    /// Upper bound on `|E exp(-l S_trunc) - E exp(-l S)|` caused by replacing the tail by its mean.
    pub fn truncation_bound(&self, lambda: f64) -> f64 {
        let c2 = (2.0 / (PI * PI)).powi(2) * quartic_zeta_tail(self.n_terms as f64 + self.a);
        (0.5 * self.t * lambda * lambda * c2).exp_m1()
    }
}

pub fn sample_gamma_series_subordinator(a: f64, t: f64, n_terms: usize, s: &mut RandomStream) -> Result<f64> {
    Ok(GammaSeries::new(a, t, n_terms)?.sample(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kanter_function_is_increasing() {
        for beta in [0.05, 0.25, 0.5, 0.6, 0.75, 0.9, 0.99] {
            let mut prev = kanter_at_zero(beta).ln() - 1e-12;
            for i in 1..2000 {
                let u = i as f64 / 2000.0;
                let v = kanter_ln(beta, u);
                assert!(v >= prev - 1e-12, "beta={beta} u={u}");
                prev = v;
            }
            let near = kanter_ln(beta, 1e-7);
            assert!((near - kanter_at_zero(beta).ln()).abs() < 1e-6);
        }
    }

    #[test]
    fn trigamma_values() {
        assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-13);
        assert!((trigamma(0.5) - PI * PI / 2.0).abs() < 1e-13);
        let direct: f64 = (0..200_000).map(|j| 1.0 / (3.5 + j as f64).powi(4)).sum();
        assert!((quartic_zeta_tail(3.5) - direct).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let mut s = RandomStream::new(1, 0);
        assert!(sample_gamma(0.0, &mut s).is_err());
        assert!(sample_beta(1.0, -1.0, &mut s).is_err());
        assert!(sample_unilateral_stable(1.0, &mut s).is_err());
        assert!(sample_alpha_cauchy(1.0, &mut s).is_err());
        assert!(sample_t_point(&StableIndex::new(1.5).unwrap(), 0.0, &mut s).is_err());
        assert!(sample_excursion_triplet(1.0, &mut s).is_err());
    }

    #[test]
    fn overshoot_vanishes_for_brownian() {
        let mut s = RandomStream::new(1, 0);
        assert_eq!(sample_overshoot(2.0, 1.0, &mut s).unwrap(), 0.0);
    }

    #[test]
    fn age_below_duration() {
        let mut s = RandomStream::new(3, 0);
        let pair = ExcursionPair::new(1.0 / 3.0).unwrap();
        for _ in 0..10_000 {
            let (xi, delta) = pair.sample(&mut s);
            assert!(xi <= delta && xi > 0.0);
        }
    }
}
