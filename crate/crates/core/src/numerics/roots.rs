use crate::error::{Error, Result};

/// Solves `f(x) = target` for nondecreasing `f` on `[lo, hi]` with the
/// Illinois variant of regula falsi, falling back to bisection when the
/// secant step stalls.
pub fn invert_monotone<F: FnMut(f64) -> f64>(mut f: F, target: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a) - target;
    let mut fb = f(b) - target;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            target,
            lo_value: fa + target,
            hi_value: fb + target,
        });
    }
    let mut side = 0i8;
    for iter in 0..400 {
        let width = b - a;
        if width.abs() <= tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        let mut c = if iter % 4 == 3 {
            0.5 * (a + b)
        } else {
            (a * fb - b * fa) / (fb - fa)
        };
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c) - target;
        if fc == 0.0 || fc.abs() <= tol * 1e-3 * target.abs().max(1.0) && width.abs() < tol.sqrt() {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_median() {
        let x = invert_monotone(|t| 1.0 - (-t).exp(), 0.5, 0.0, 10.0, 1e-12).unwrap();
        assert!((x - std::f64::consts::LN_2).abs() < 1e-10, "{x}");
    }

    #[test]
    fn bracket_error() {
        let r = invert_monotone(|t| t, 5.0, 0.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::Bracket { .. })));
    }

    #[test]
    fn steep_function() {
        let x = invert_monotone(|t: f64| t.powi(9), 0.5, 0.0, 2.0, 1e-13).unwrap();
        assert!((x - 0.5f64.powf(1.0 / 9.0)).abs() < 1e-10);
    }
}
