use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerances and budgets shared by every quadrature routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    /// Half-period segments summed directly before the alternating tail is accelerated.
    pub oscillatory_terms: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_panels: 2000,
            oscillatory_terms: 40,
        }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_panels: usize, oscillatory_terms: usize) -> Result<Self> {
        let spec = QuadSpec {
            abs_tol,
            rel_tol,
            max_panels,
            oscillatory_terms,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_panels < 1 {
            return Err(Error::InvalidSpec("max_panels must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae in decreasing order.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { lo, hi, value, error }
}

/// Result of a quadrature with its error estimate and the number of panels used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

fn adaptive_finite<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    spec: &QuadSpec,
    context: &str,
) -> Result<Quadrature> {
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    let first = gk15(f, lo, hi);
    if !first.value.is_finite() {
        return Err(Error::NonConvergence {
            context: context.to_string(),
            estimate: first.value,
            error: f64::INFINITY,
        });
    }
    let mut heap = BinaryHeap::new();
    let mut total = first.value;
    let mut total_err = first.error;
    heap.push(first);
    let mut panels = 1usize;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.abs());
        if total_err <= target {
            return Ok(Quadrature {
                value: total,
                error: total_err,
                panels,
            });
        }
        if panels >= spec.max_panels {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo.min(worst.hi) || mid >= worst.lo.max(worst.hi) {
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.lo, mid);
        let right = gk15(f, mid, worst.hi);
        if !left.value.is_finite() || !right.value.is_finite() {
            return Err(Error::NonConvergence {
                context: context.to_string(),
                estimate: f64::NAN,
                error: f64::INFINITY,
            });
        }
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    // Recompute from the panels so the running sums carry no drift.
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum();
    let target = spec.abs_tol.max(spec.rel_tol * value.abs());
    if error <= target {
        return Ok(Quadrature { value, error, panels });
    }
    Err(Error::NonConvergence {
        context: context.to_string(),
        estimate: value,
        error,
    })
}

/// Integrates `f` over `[lo, hi]` with global adaptive Gauss-Kronrod bisection.
///
/// `hi` may be `f64::INFINITY`; the half line is mapped onto `[0, 1)` by
/// `x = lo + u / (1 - u)`, which suits integrands decaying faster than `x^-2`.
/// Use [`integrate_power_tail`] for slower algebraic decay.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<f64> {
    integrate_adaptive_detailed(&mut f, lo, hi, spec).map(|q| q.value)
}

pub fn integrate_adaptive_detailed<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    spec: &QuadSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    if lo.is_nan() || hi.is_nan() || lo.is_infinite() {
        return Err(Error::Domain(format!("integration range [{lo}, {hi}]")));
    }
    if hi == f64::INFINITY {
        let mut g = |u: f64| {
            let w = 1.0 - u;
            if w <= 0.0 {
                return 0.0;
            }
            let y = f(lo + u / w);
            if y == 0.0 {
                0.0
            } else {
                y / (w * w)
            }
        };
        adaptive_finite(&mut g, 0.0, 1.0, spec, "semi-infinite integral")
    } else {
        adaptive_finite(f, lo, hi, spec, "finite integral")
    }
}

/// Integrates `f` over `[lo, inf)` when `f(x)` decays like `x^-decay` with `decay > 1`.
///
/// The range is split at `lo + 1`; the tail uses `x = (lo + 1) s^-m` with
/// `m = 1 / (decay - 1)`, which makes the transformed integrand bounded at `s = 0`.
pub fn integrate_power_tail<F: FnMut(f64) -> f64>(mut f: F, lo: f64, decay: f64, spec: &QuadSpec) -> Result<f64> {
    if !(decay > 1.0) {
        return Err(Error::Domain(format!("tail exponent must exceed 1, got {decay}")));
    }
    if !(lo >= 0.0) {
        return Err(Error::Domain(format!("power-tail integral needs lo >= 0, got {lo}")));
    }
    let split = lo + 1.0;
    let head = integrate_adaptive(&mut f, lo, split, spec)?;
    let m = 1.0 / (decay - 1.0);
    let tail = integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let x = split * s.powf(-m);
            if !x.is_finite() {
                return 0.0;
            }
            let y = f(x);
            if y == 0.0 {
                0.0
            } else {
                y * split * m * s.powf(-m - 1.0)
            }
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(head + tail)
}

/// `int_0^inf g(x) cos(w x) dx` for slowly decaying `g`.
pub fn integrate_oscillatory_cos<F: FnMut(f64) -> f64>(g: F, w: f64, spec: &QuadSpec) -> Result<f64> {
    integrate_oscillatory_cos_from(g, w, 0.0, spec)
}

/// `int_lo^inf g(x) cos(w x) dx`, summed over half periods between zeros of
/// the cosine. The alternating sequence of panel integrals is accelerated by
/// iterated averaging of partial sums.
pub fn integrate_oscillatory_cos_from<F: FnMut(f64) -> f64>(mut g: F, w: f64, lo: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if !w.is_finite() || !lo.is_finite() || lo < 0.0 {
        return Err(Error::Domain(format!("oscillatory integral with w={w}, lo={lo}")));
    }
    let w = w.abs();
    if w == 0.0 {
        return integrate_adaptive(g, lo, f64::INFINITY, spec);
    }
    let period = PI / w;
    // First zero of cos(w x) strictly above lo.
    let k0 = ((lo * w / PI) - 0.5).floor() + 1.0;
    let mut zero = (k0.max(0.0) + 0.5) * period;
    if zero <= lo {
        zero += period;
    }
    let panel_spec = spec.with_abs_tol(spec.abs_tol * 0.05);
    let mut integrand = |x: f64| {
        let y = g(x);
        if y == 0.0 {
            0.0
        } else {
            y * (w * x).cos()
        }
    };
    let mut head = integrate_adaptive(&mut integrand, lo, zero, &panel_spec)?;
    let tol = |v: f64| spec.abs_tol.max(spec.rel_tol * v.abs());

    // Directly summed segments.
    let mut left = zero;
    let mut last_term = f64::INFINITY;
    for _ in 0..spec.oscillatory_terms {
        let right = left + period;
        let term = integrate_adaptive(&mut integrand, left, right, &panel_spec)?;
        head += term;
        left = right;
        if term.abs() < 0.01 * tol(head) && last_term.abs() < 0.01 * tol(head) {
            return Ok(head);
        }
        last_term = term;
    }

    // Accelerated alternating tail.
    let max_tail = spec.max_panels.max(64);
    let mut partial = Vec::with_capacity(64);
    let mut running = 0.0;
    let mut previous: Option<f64> = None;
    let mut agree = 0usize;
    for n in 0..max_tail {
        let right = left + period;
        let term = integrate_adaptive(&mut integrand, left, right, &panel_spec)?;
        left = right;
        running += term;
        partial.push(running);
        if partial.len() >= 3 {
            let est = euler_average(&partial);
            if let Some(prev) = previous {
                if (est - prev).abs() <= 0.1 * tol(head + est) {
                    agree += 1;
                    if agree >= 2 {
                        return Ok(head + est);
                    }
                } else {
                    agree = 0;
                }
            }
            previous = Some(est);
        }
        if term.abs() < 0.01 * tol(head + running) && n > 2 {
            return Ok(head + running);
        }
    }
    Err(Error::NonConvergence {
        context: "oscillatory tail".into(),
        estimate: head + previous.unwrap_or(running),
        error: f64::NAN,
    })
}

/// Limit estimate of an alternating series from its partial sums by repeated
/// averaging of neighbours.
fn euler_average(partial: &[f64]) -> f64 {
    // Averaging more than ~30 levels gains nothing and loses digits.
    let start = partial.len().saturating_sub(30);
    let mut work: Vec<f64> = partial[start..].to_vec();
    while work.len() > 1 {
        for i in 0..work.len() - 1 {
            work[i] = 0.5 * (work[i] + work[i + 1]);
        }
        work.pop();
    }
    work[0]
}

/// `int_0^1 f(v) v^(a-1) (1-v)^(b-1) dv / B(a, b)` for `f` bounded on `[0,1]`.
///
/// Power substitutions near both endpoints absorb the weight singularities.
pub fn integrate_beta_weighted<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("beta weight needs a, b > 0, got {a}, {b}")));
    }
    let ln_b = statrs::function::beta::ln_beta(a, b);
    // v = s^(1/a) / 2 on the lower half, 1 - v = s^(1/b) / 2 on the upper.
    let lower = integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let v = 0.5 * s.powf(1.0 / a);
            let jac = (a * 0.5f64.ln() - a.ln() - ln_b).exp();
            f(v) * (1.0 - v).powf(b - 1.0) * jac
        },
        0.0,
        1.0,
        spec,
    )?;
    let upper = integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let one_minus = 0.5 * s.powf(1.0 / b);
            let v = 1.0 - one_minus;
            let jac = (b * 0.5f64.ln() - b.ln() - ln_b).exp();
            f(v) * v.powf(a - 1.0) * jac
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(lower + upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn exponential_half_line() {
        let v = integrate_adaptive(|x| (-x).exp(), 0.0, f64::INFINITY, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn gaussian_moment() {
        let v = integrate_adaptive(|x| x * (-0.5 * x * x).exp(), 0.0, f64::INFINITY, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn gaussian_cosine_transform() {
        let v = integrate_oscillatory_cos(|x| (-x * x).exp(), 1.0, &spec()).unwrap();
        let expect = 0.5 * PI.sqrt() * (-0.25f64).exp();
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");
    }

    #[test]
    fn cauchy_cosine_transform_needs_acceleration() {
        let v = integrate_oscillatory_cos(|x| 1.0 / (1.0 + x * x), 1.0, &spec()).unwrap();
        let expect = 0.5 * PI * (-1.0f64).exp();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
    }

    #[test]
    fn cosine_transform_from_offset() {
        // int_1^inf cos(x)/x^2 dx = cos 1 - (pi/2 - Si(1)) ... checked against a direct split
        let full = integrate_oscillatory_cos(|x| 1.0 / (1.0 + x * x), 2.0, &spec()).unwrap();
        let head = integrate_adaptive(|x| (2.0 * x).cos() / (1.0 + x * x), 0.0, 1.3, &spec()).unwrap();
        let tail = integrate_oscillatory_cos_from(|x| 1.0 / (1.0 + x * x), 2.0, 1.3, &spec()).unwrap();
        assert!((head + tail - full).abs() < 1e-9);
        assert!((full - 0.5 * PI * (-2.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn power_tail() {
        // int_0^inf dx / (1 + x^1.5) = (2 pi / 3) / sin(2 pi / 3)
        let v = integrate_power_tail(|x| 1.0 / (1.0 + x.powf(1.5)), 0.0, 1.5, &spec()).unwrap();
        let expect = (PI / 1.5) / (PI / 1.5).sin();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
    }

    #[test]
    fn beta_weighted_mean() {
        let (a, b) = (0.3, 0.7);
        let v = integrate_beta_weighted(|v| v, a, b, &spec()).unwrap();
        assert!((v - a / (a + b)).abs() < 1e-10, "{v}");
        let one = integrate_beta_weighted(|_| 1.0, 0.5, 0.5, &spec()).unwrap();
        assert!((one - 1.0).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = QuadSpec::default()
            .with_max_panels(2)
            .with_abs_tol(1e-15)
            .with_rel_tol(1e-15);
        let r = integrate_adaptive(|x: f64| x.abs().sqrt().sin() / (x + 1e-3), 0.0, 50.0, &tight);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn invalid_spec_rejected() {
        assert!(QuadSpec::new(0.0, 1e-9, 10, 10).is_err());
        assert!(QuadSpec::new(1e-9, -1.0, 10, 10).is_err());
        assert!(QuadSpec::new(1e-9, 1e-9, 0, 10).is_err());
    }
}
