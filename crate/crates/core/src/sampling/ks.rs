use crate::numerics::{integrate_adaptive, QuadSpec};

/// Kolmogorov-Smirnov distance between the empirical law of `sorted` and `cdf`.
pub fn ks_statistic<F: FnMut(f64) -> f64>(sorted: &[f64], mut cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// KS distance against the distribution with density `f`, given the CDF at
/// the smallest sample. The CDF is accumulated by 15-point Kronrod sums over
/// the gaps between consecutive order statistics.
pub fn ks_statistic_from_density<F: FnMut(f64) -> f64>(sorted: &[f64], cdf_at_first: f64, mut f: F) -> f64 {
    let spec = QuadSpec::default()
        .with_abs_tol(1e-13)
        .with_rel_tol(1e-10)
        .with_max_panels(200);
    let mut cdf = cdf_at_first;
    let mut prev = match sorted.first() {
        Some(&x) => x,
        None => return 0.0,
    };
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        if x > prev {
            cdf += integrate_adaptive(&mut f, prev, x, &spec).unwrap_or_else(|e| match e {
                crate::Error::NonConvergence { estimate, .. } => estimate,
                _ => f64::NAN,
            });
            prev = x;
        }
        d = d.max((i + 1) as f64 / n - cdf).max(cdf - i as f64 / n);
    }
    d
}

/// Piecewise monotone cubic interpolant of a distribution function on a grid,
/// with caller-supplied tails outside it.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    xs: Vec<f64>,
    fs: Vec<f64>,
    ds: Vec<f64>,
}

impl TabulatedCdf {
    /// `xs` strictly increasing, `fs` nondecreasing.
    pub fn new(xs: Vec<f64>, fs: Vec<f64>) -> Self {
        assert_eq!(xs.len(), fs.len());
        assert!(xs.len() >= 2);
        let n = xs.len();
        let h: Vec<f64> = (0..n - 1).map(|i| xs[i + 1] - xs[i]).collect();
        let slopes: Vec<f64> = (0..n - 1).map(|i| (fs[i + 1] - fs[i]) / h[i]).collect();
        let mut ds = vec![0.0; n];
        // Second-order three-point derivatives, then the Fritsch-Carlson limiter.
        for i in 1..n - 1 {
            ds[i] = (h[i] * slopes[i - 1] + h[i - 1] * slopes[i]) / (h[i - 1] + h[i]);
            if slopes[i - 1] * slopes[i] <= 0.0 {
                ds[i] = 0.0;
            }
        }
        if n > 2 {
            ds[0] = ((2.0 * h[0] + h[1]) * slopes[0] - h[0] * slopes[1]) / (h[0] + h[1]);
            ds[n - 1] =
                ((2.0 * h[n - 2] + h[n - 3]) * slopes[n - 2] - h[n - 2] * slopes[n - 3]) / (h[n - 2] + h[n - 3]);
        } else {
            ds[0] = slopes[0];
            ds[1] = slopes[0];
        }
        for d in [0, n - 1] {
            let s = slopes[d.min(n - 2)];
            if ds[d] * s < 0.0 {
                ds[d] = 0.0;
            }
        }
        for i in 0..n - 1 {
            if slopes[i] == 0.0 {
                ds[i] = 0.0;
                ds[i + 1] = 0.0;
                continue;
            }
            let a = ds[i] / slopes[i];
            let b = ds[i + 1] / slopes[i];
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                ds[i] = tau * a * slopes[i];
                ds[i + 1] = tau * b * slopes[i];
            }
        }
        TabulatedCdf { xs, fs, ds }
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    /// Interpolated value for `x` inside the grid, `None` outside.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.range();
        if !(x >= lo && x <= hi) {
            return None;
        }
        let i = match self.xs.partition_point(|&g| g <= x) {
            0 => 0,
            k if k >= self.xs.len() => self.xs.len() - 2,
            k => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * self.fs[i]
            + (t3 - 2.0 * t2 + t) * h * self.ds[i]
            + (-2.0 * t3 + 3.0 * t2) * self.fs[i + 1]
            + (t3 - t2) * h * self.ds[i + 1];
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_distance() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
        let d2 = ks_statistic_from_density(&xs, 0.005, |_| 1.0);
        assert!((d - d2).abs() < 1e-12);
    }

    #[test]
    fn tabulated_exponential() {
        let xs: Vec<f64> = (0..400).map(|i| i as f64 * 0.05).collect();
        let fs: Vec<f64> = xs.iter().map(|x| 1.0 - (-x).exp()).collect();
        let tab = TabulatedCdf::new(xs, fs);
        for x in [0.01, 0.333, 1.7, 9.9] {
            assert!((tab.eval(x).unwrap() - (1.0 - (-x).exp())).abs() < 1e-5);
        }
        assert!(tab.eval(-1.0).is_none());
    }
}
