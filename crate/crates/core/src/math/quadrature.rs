//! Globally adaptive 15-point Gauss–Kronrod quadrature.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct QuadratureResult<T: Scalar> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions<T> {
    /// Accept once the error estimate is below `max(abs_tol, rel_tol * |value|)`.
    pub rel_tol: T,
    /// Number of equal panels the interval is cut into before adapting.
    pub initial_panels: usize,
    /// Bisection budget.
    pub max_subintervals: usize,
}

impl<T: Scalar> Default for QuadratureOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::zero(),
            initial_panels: 1,
            max_subintervals: 2000,
        }
    }
}

struct Panel<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Scalar> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Scalar> Eq for Panel<T> {}
impl<T: Scalar> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod15<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T) {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let f_center = f(center);

    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];

    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + T::lit(WGK[j]) * (f1 + f2);
        res_abs = res_abs + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_len = half_len.abs();
    let value = res_k * half_len;
    res_abs = res_abs * abs_len;
    res_asc = res_asc * abs_len;

    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scaled = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * scaled.min(T::one());
    }
    let eps = T::epsilon();
    if res_abs > T::min_positive_value() / (T::lit(50.0) * eps) {
        error = error.max(T::lit(50.0) * eps * res_abs);
    }
    (value, error)
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
pub fn integrate<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    integrate_with(f, lo, hi, tol, &QuadratureOptions::default())
}

pub fn integrate_with<T, F>(
    f: F,
    lo: T,
    hi: T,
    tol: T,
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Domain(format!(
            "need finite lo < hi, got [{lo}, {hi}]"
        )));
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let panels = opts.initial_panels.max(1);
    let width = (hi - lo) / T::from_count(panels);
    let mut heap = BinaryHeap::with_capacity(panels + opts.max_subintervals);
    let mut evaluations = 0;
    for i in 0..panels {
        let a = lo + width * T::from_count(i);
        let b = if i + 1 == panels { hi } else { a + width };
        let (value, error) = kronrod15(&f, a, b);
        evaluations += 15;
        heap.push(Panel {
            lo: a,
            hi: b,
            value,
            error,
        });
    }

    let totals = |heap: &BinaryHeap<Panel<T>>| {
        heap.iter().fold((T::zero(), T::zero()), |(v, e), p| {
            (v + p.value, e + p.error)
        })
    };
    let accept = |value: T, error: T| error <= tol.max(opts.rel_tol * value.abs());

    let mut bisections = 0;
    loop {
        let (value, error) = totals(&heap);
        if accept(value, error) {
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        if bisections >= opts.max_subintervals || !(worst.lo < mid && mid < worst.hi) {
            heap.push(worst);
            let (value, error) = totals(&heap);
            return Err(Error::Convergence {
                estimate: value.as_f64(),
                error: error.as_f64(),
                evaluations,
            });
        }
        let (v1, e1) = kronrod15(&f, worst.lo, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.hi);
        evaluations += 30;
        bisections += 1;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant() {
        let r = integrate(|_: f64| 1.0, 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(r.abs_error_estimate >= 0.0 && r.evaluations > 0);
    }

    #[test]
    fn gaussian() {
        let r = integrate(|x: f64| (-x * x).exp(), -10.0, 10.0, 1e-10).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-10);
        assert!(r.abs_error_estimate <= 1e-10);
    }

    #[test]
    fn odd_integrand() {
        let r = integrate(|x: f64| x * (-x * x).exp(), -10.0, 10.0, 1e-10).unwrap();
        assert!(r.value.abs() < 1e-10);
    }

    #[test]
    fn oscillatory() {
        // ∫_0^{10π} sin(x)^2 dx = 5π
        let r = integrate(
            |x: f64| x.sin().powi(2),
            0.0,
            10.0 * std::f64::consts::PI,
            1e-11,
        )
        .unwrap();
        assert!((r.value - 5.0 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let opts = QuadratureOptions {
            max_subintervals: 3,
            ..Default::default()
        };
        let err =
            integrate_with(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, 1e-14, &opts).unwrap_err();
        match err {
            Error::Convergence {
                estimate,
                evaluations,
                ..
            } => {
                assert!(estimate.is_finite() && estimate > 0.0);
                assert!(evaluations > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(integrate(|x: f64| x, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate(|x: f64| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn relative_tolerance() {
        let opts = QuadratureOptions {
            rel_tol: 1e-12,
            initial_panels: 8,
            ..Default::default()
        };
        let r = integrate_with(|x: f64| 1e6 * (-x * x).exp(), -10.0, 10.0, 1e-300, &opts).unwrap();
        assert!((r.value / 1e6 - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_precision() {
        let r = integrate(|x: f32| (-x * x).exp(), -6.0, 6.0, 1e-4).unwrap();
        assert!((r.value - std::f32::consts::PI.sqrt()).abs() < 1e-4);
    }
}
