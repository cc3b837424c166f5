use super::rng::RandomStream;
use super::variates::sample_uniform;
use crate::error::{Error, Result};
use crate::numerics::{gaver_stehfest_cdf, laplace_invert_cdf, LaplaceTransform, DEFAULT_GS_TERMS};

/// Probability mass left outside the tabulated range on each side.
pub const TAIL_MASS: f64 = 1e-5;
/// Largest decrease between neighbouring table entries absorbed as inversion noise.
pub const MONOTONE_SLACK: f64 = 1e-5;

/// Inverse-CDF sampler for a law known only through its Laplace transform.
///
/// The distribution function is inverted numerically on a log-spaced grid
/// covering all but about `TAIL_MASS` on each side; draws interpolate
/// linearly in `(F, ln t)`. Bias is bounded by the inversion error, the
/// interpolation error of the grid and the two tail masses.
#[derive(Debug, Clone)]
pub struct LtTableSampler {
    ln_t: Vec<f64>,
    cdf: Vec<f64>,
}

impl LtTableSampler {
    pub fn build(phi: &LaplaceTransform, table_size: usize) -> Result<Self> {
        Self::build_with_terms(phi, table_size, DEFAULT_GS_TERMS)
    }

    pub fn build_with_terms(phi: &LaplaceTransform, table_size: usize, n_terms: usize) -> Result<Self> {
        if table_size < 16 {
            return Err(Error::TableBuild(format!(
                "table needs at least 16 points, got {table_size}"
            )));
        }
        let raw = |t: f64| gaver_stehfest_cdf(phi, t, n_terms);
        let mut lo = 1.0;
        let mut steps = 0;
        while raw(lo)? > TAIL_MASS {
            lo *= 0.5;
            steps += 1;
            if steps > 200 {
                return Err(Error::TableBuild(format!("{}: no lower end found", phi.label)));
            }
        }
        let mut hi = 1.0;
        steps = 0;
        while raw(hi)? < 1.0 - TAIL_MASS {
            hi *= 2.0;
            steps += 1;
            if steps > 200 {
                return Err(Error::TableBuild(format!("{}: no upper end found", phi.label)));
            }
        }
        let (l0, l1) = (lo.ln(), hi.ln());
        let ln_t: Vec<f64> = (0..table_size)
            .map(|i| l0 + (l1 - l0) * i as f64 / (table_size - 1) as f64)
            .collect();
        let mut cdf = Vec::with_capacity(table_size);
        let mut running: f64 = 0.0;
        for &lt in &ln_t {
            let f = laplace_invert_cdf(phi, lt.exp(), n_terms)?;
            if f < running - MONOTONE_SLACK {
                return Err(Error::TableBuild(format!(
                    "{}: inverted CDF decreases from {running} to {f} at t = {}",
                    phi.label,
                    lt.exp()
                )));
            }
            running = running.max(f);
            cdf.push(running);
        }
        Ok(LtTableSampler { ln_t, cdf })
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let first = self.cdf[0];
        let last = *self.cdf.last().unwrap();
        if u <= first {
            // linear in t down to 0 below the table
            return self.ln_t[0].exp() * if first > 0.0 { u / first } else { 1.0 };
        }
        if u >= last {
            return self.ln_t.last().unwrap().exp();
        }
        let k = self.cdf.partition_point(|&f| f < u);
        let (f0, f1) = (self.cdf[k - 1], self.cdf[k]);
        let w = if f1 > f0 { (u - f0) / (f1 - f0) } else { 0.0 };
        (self.ln_t[k - 1] + w * (self.ln_t[k] - self.ln_t[k - 1])).exp()
    }

    pub fn sample(&self, s: &mut RandomStream) -> f64 {
        self.quantile(sample_uniform(s))
    }

    pub fn range(&self) -> (f64, f64) {
        (self.ln_t[0].exp(), self.ln_t.last().unwrap().exp())
    }
}

pub fn sample_from_lt(phi: &LaplaceTransform, s: &mut RandomStream, table_size: usize) -> Result<f64> {
    Ok(LtTableSampler::build(phi, table_size)?.sample(s))
}
