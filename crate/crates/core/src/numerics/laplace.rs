use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type LtFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A Laplace transform `q -> E[exp(-q T)]` of a nonnegative variable.
#[derive(Clone)]
pub struct LaplaceTransform {
    eval: Arc<LtFn>,
    pub q_min: f64,
    pub label: String,
}

impl fmt::Debug for LaplaceTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaplaceTransform")
            .field("label", &self.label)
            .field("q_min", &self.q_min)
            .finish()
    }
}

impl LaplaceTransform {
    pub fn new<F>(label: impl Into<String>, q_min: f64, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        LaplaceTransform {
            eval: Arc::new(f),
            q_min,
            label: label.into(),
        }
    }

    pub fn eval(&self, q: f64) -> Result<f64> {
        if !(q >= self.q_min) || !q.is_finite() {
            return Err(Error::Domain(format!(
                "{}: q = {q} below q_min = {}",
                self.label, self.q_min
            )));
        }
        (self.eval)(q)
    }
}

fn binomial(n: u64, k: u64) -> i128 {
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Largest supported term count; weights are summed exactly in 128-bit integers.
pub const MAX_GS_TERMS: usize = 30;

/// Stehfest coefficients for an even number of terms, correctly rounded.
pub fn stehfest_weights(n: usize) -> Vec<f64> {
    assert!(
        n.is_multiple_of(2) && (2..=MAX_GS_TERMS).contains(&n),
        "unsupported term count {n}"
    );
    let half = n / 2;
    let half_fact: f64 = (1..=half).map(|i| i as f64).product();
    (1..=n)
        .map(|k| {
            // j^h (2j)! / ((h-j)! j! (j-1)! (k-j)! (2j-k)!) = j^(h+1) C(2j,j) C(j,k-j) C(h,j) / h!
            let mut sum: i128 = 0;
            for j in k.div_ceil(2)..=k.min(half) {
                let jj = j as u64;
                sum += (j as i128).pow(half as u32 + 1)
                    * binomial(2 * jj, jj)
                    * binomial(jj, (k - j) as u64)
                    * binomial(half as u64, jj);
            }
            let w = sum as f64 / half_fact;
            if (k + half) % 2 == 1 {
                -w
            } else {
                w
            }
        })
        .collect()
}

/// Unclamped Gaver-Stehfest estimate of `P(T <= t)` using the transform
/// `phi(q) / q` of the distribution function.
pub fn gaver_stehfest_cdf(phi: &LaplaceTransform, t: f64, n_terms: usize) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("inversion time must be positive, got {t}")));
    }
    if n_terms < 2 || n_terms % 2 == 1 || n_terms > MAX_GS_TERMS {
        return Err(Error::Domain(format!(
            "n_terms must be even in [2, {MAX_GS_TERMS}], got {n_terms}"
        )));
    }
    let ln2 = std::f64::consts::LN_2;
    let weights = stehfest_weights(n_terms);
    let mut terms = Vec::with_capacity(n_terms);
    for (i, w) in weights.iter().enumerate() {
        let k = (i + 1) as f64;
        // (ln2 / t) * phi(q) / q = phi(q) / k
        terms.push(w * phi.eval(k * ln2 / t)? / k);
    }
    Ok(neumaier_sum(&terms))
}

fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Divergence between the `n` and `n - 2` term estimates above which the
/// inversion is reported as unstable.
pub const INSTABILITY_GAP: f64 = 1e-3;

/// Distribution function `P(T <= t)` recovered from `phi`.
///
/// Small excursions outside `[0, 1]` are clamped; a disagreement between the
/// `n_terms` and `n_terms - 2` estimates larger than [`INSTABILITY_GAP`]
/// raises `NumericInstability`.
pub fn laplace_invert_cdf(phi: &LaplaceTransform, t: f64, n_terms: usize) -> Result<f64> {
    let main = gaver_stehfest_cdf(phi, t, n_terms)?;
    if n_terms >= 4 {
        let coarse = gaver_stehfest_cdf(phi, t, n_terms - 2)?;
        if !main.is_finite() || (main - coarse).abs() > INSTABILITY_GAP {
            return Err(Error::NumericInstability {
                context: format!("inverting {} at t = {t}", phi.label),
                first: coarse,
                second: main,
            });
        }
    }
    if !(-INSTABILITY_GAP..=1.0 + INSTABILITY_GAP).contains(&main) {
        return Err(Error::NumericInstability {
            context: format!("inverting {} at t = {t}: estimate outside [0, 1]", phi.label),
            first: main,
            second: main.clamp(0.0, 1.0),
        });
    }
    Ok(main.clamp(0.0, 1.0))
}

pub const DEFAULT_GS_TERMS: usize = 12;

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_lt() -> LaplaceTransform {
        LaplaceTransform::new("exponential", 0.0, |q| Ok(1.0 / (1.0 + q)))
    }

    #[test]
    fn weights_match_known_values() {
        // n = 4: -2, 26, -48, 24
        assert_eq!(stehfest_weights(4), vec![-2.0, 26.0, -48.0, 24.0]);
        for n in [8, 12, 18] {
            let w = stehfest_weights(n);
            // Inversion of 1/q must give the constant 1.
            let s: f64 = w.iter().enumerate().map(|(i, w)| w / (i + 1) as f64).sum();
            assert!((s - 1.0).abs() < 1e-6, "{n}: {s}");
        }
    }

    #[test]
    fn exponential_cdf() {
        // Achievable accuracy in double precision grows with t; these bounds are measured.
        for (t, tol) in [(0.1, 1e-7), (0.5, 1e-7), (1.0, 1e-6), (2.0, 1e-6), (5.0, 5e-6)] {
            let v = laplace_invert_cdf(&exp_lt(), t, 18).unwrap();
            let expect = 1.0 - (-t).exp();
            assert!((v - expect).abs() < tol, "t={t}: {v} vs {expect}");
        }
        let v = laplace_invert_cdf(&exp_lt(), 1.0, DEFAULT_GS_TERMS).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-4);
    }

    #[test]
    fn one_sided_half_stable() {
        let lt = LaplaceTransform::new("exp(-sqrt q)", 0.0, |q: f64| Ok((-q.sqrt()).exp()));
        let v = laplace_invert_cdf(&lt, 1.0, 16).unwrap();
        let expect = statrs::function::erf::erfc(0.5);
        assert!((v - expect).abs() < 1e-4, "{v} vs {expect}");
    }

    #[test]
    fn point_mass_is_smoothed() {
        let lt = LaplaceTransform::new("point mass", 0.0, |q: f64| Ok((-q).exp()));
        let v = gaver_stehfest_cdf(&lt, 2.0, 12).unwrap();
        assert!((v - 1.0).abs() < 0.05, "{v}");
    }

    #[test]
    fn domain_checks() {
        assert!(laplace_invert_cdf(&exp_lt(), 0.0, 12).is_err());
        assert!(laplace_invert_cdf(&exp_lt(), 1.0, 11).is_err());
        assert!(exp_lt().eval(-1.0).is_err());
    }
}
