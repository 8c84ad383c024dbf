use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions<T> {
    /// Absolute bracket width at which iteration stops.
    pub x_tol: T,
    /// Stop early once `|f(x)|` is at or below this.
    pub f_tol: T,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for RootOptions<T> {
    fn default() -> Self {
        Self {
            x_tol: T::lit(1e-12),
            f_tol: T::zero(),
            max_iterations: 200,
        }
    }
}

/// Root of `f` inside `[lo, hi]`, where `f` must change sign.
///
/// Bisection safeguarded secant: a secant step is taken when it lands strictly
/// inside the bracket, and a plain bisection is forced whenever the previous
/// step failed to halve the bracket.
pub fn find_root<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    find_root_with(
        f,
        lo,
        hi,
        &RootOptions {
            x_tol: tol,
            ..Default::default()
        },
    )
}

pub fn find_root_with<T, F>(f: F, lo: T, hi: T, opts: &RootOptions<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if (fa * fb).is_nan() || fa * fb > T::zero() {
        return Err(Error::Bracket {
            lo: a.as_f64(),
            hi: b.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }

    let half = T::lit(0.5);
    let mut force_bisect = false;
    for _ in 0..opts.max_iterations {
        let width = b - a;
        if width <= opts.x_tol {
            break;
        }
        let mid = a + half * width;
        let candidate = if force_bisect {
            mid
        } else {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a && s < b {
                s
            } else {
                mid
            }
        };
        let fc = f(candidate);
        if fc == T::zero() || fc.abs() <= opts.f_tol {
            return Ok(candidate);
        }
        if fa * fc < T::zero() {
            b = candidate;
            fb = fc;
        } else {
            a = candidate;
            fa = fc;
        }
        force_bisect = !force_bisect && (b - a) > half * width;
    }

    if b - a <= opts.x_tol {
        Ok(if fa.abs() < fb.abs() { a } else { b })
    } else {
        Err(Error::Convergence {
            estimate: (half * (a + b)).as_f64(),
            error: (b - a).as_f64(),
            evaluations: opts.max_iterations + 2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear() {
        let r = find_root(|x: f64| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n1_peak_condition() {
        let r = find_root(|x: f64| 2.0 - 2.0 * x * x, 0.5, 2.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n2_peak_condition() {
        let r = find_root(|x: f64| x * x - 2.5, 1.0, 2.0, 1e-12).unwrap();
        assert!((r - 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let err = find_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn flat_region_falls_back_to_bisection() {
        // Secant steps crawl on this one; bisection keeps the bracket shrinking.
        let r = find_root(|x: f64| (x - 0.3).powi(7), -1.0, 3.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-10);
    }

    #[test]
    fn reversed_bracket() {
        let r = find_root(|x: f64| x.cos(), 3.0, 0.0, 1e-13).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
