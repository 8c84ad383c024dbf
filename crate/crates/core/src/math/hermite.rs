use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Physicists' Hermite polynomial `H_n(y)` together with `H_{n-1}(y)`.
///
/// Carrying the lower order along gives the derivative for free through
/// `H_n'(y) = 2n H_{n-1}(y)`. For `n = 0` the lower order is defined as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct HermitePair<T: Scalar> {
    pub n: u32,
    pub y: T,
    pub h_n: T,
    pub h_nm1: T,
}

impl<T: Scalar> HermitePair<T> {
    /// `H_n'(y)`.
    pub fn derivative(&self) -> T {
        T::lit(2.0) * T::from_u32(self.n).unwrap() * self.h_nm1
    }
}

/// Evaluates `H_n(y)` and `H_{n-1}(y)` by upward recurrence from `H_0 = 1`, `H_1 = 2y`.
pub fn hermite_pair<T: Scalar>(n: u32, y: T) -> Result<HermitePair<T>> {
    if !y.is_finite() {
        return Err(Error::Domain(format!(
            "Hermite argument must be finite, got {y}"
        )));
    }
    let (h_n, h_nm1) = hermite_unchecked(n, y);
    Ok(HermitePair { n, y, h_n, h_nm1 })
}

/// Recurrence without the argument check; returns `(H_n, H_{n-1})`.
#[inline]
pub fn hermite_unchecked<T: Scalar>(n: u32, y: T) -> (T, T) {
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        // H_{k+1} = 2y H_k - 2k H_{k-1}
        let next = two * y * cur - two * T::from_u32(k).unwrap() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `ln(n!)` as a sum of logarithms; never overflows.
pub fn ln_factorial<T: Scalar>(n: u32) -> T {
    (2..=n).fold(T::zero(), |acc, k| acc + T::from_u32(k).unwrap().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        let p = hermite_pair(0, 3.7_f64).unwrap();
        assert_eq!((p.h_n, p.h_nm1), (1.0, 0.0));
        let p = hermite_pair(1, 2.0_f64).unwrap();
        assert_eq!((p.h_n, p.h_nm1), (4.0, 1.0));
        let p = hermite_pair(2, 1.5_f64).unwrap();
        assert_eq!((p.h_n, p.h_nm1), (7.0, 3.0));
    }

    #[test]
    fn explicit_coefficients() {
        // H_5(y) = 32y^5 - 160y^3 + 120y
        let y = 0.83_f64;
        let expected = 32.0 * y.powi(5) - 160.0 * y.powi(3) + 120.0 * y;
        let (h5, _) = hermite_unchecked(5, y);
        assert!((h5 - expected).abs() < 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(hermite_pair(3, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(
            hermite_pair(3, f64::INFINITY),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn single_precision() {
        let p = hermite_pair(2, 1.5_f32).unwrap();
        assert_eq!(p.h_n, 7.0);
    }

    #[test]
    fn ln_factorial_matches_product() {
        assert_eq!(ln_factorial::<f64>(0), 0.0);
        assert_eq!(ln_factorial::<f64>(1), 0.0);
        assert!((ln_factorial::<f64>(5) - 120f64.ln()).abs() < 1e-14);
        // 170! is the largest finite f64 factorial; the log form keeps going.
        assert!(ln_factorial::<f64>(400).is_finite());
    }

    proptest! {
        #[test]
        fn recurrence_holds(n in 1u32..=30, y in -20.0f64..20.0) {
            let (h_np1, _) = hermite_unchecked(n + 1, y);
            let p = hermite_pair(n, y).unwrap();
            let rhs = 2.0 * y * p.h_n - 2.0 * n as f64 * p.h_nm1;
            let scale = (2.0 * y * p.h_n).abs().max((2.0 * n as f64 * p.h_nm1).abs()).max(1.0);
            prop_assert!((h_np1 - rhs).abs() <= 1e-12 * scale);
        }

        #[test]
        fn parity(n in 0u32..=30, y in -20.0f64..20.0) {
            let (a, _) = hermite_unchecked(n, y);
            let (b, _) = hermite_unchecked(n, -y);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((b - sign * a).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn derivative_identity(n in 0u32..=12, y in -3.0f64..3.0) {
            let h = 1e-5;
            let (fp, _) = hermite_unchecked(n, y + h);
            let (fm, _) = hermite_unchecked(n, y - h);
            let numeric = (fp - fm) / (2.0 * h);
            let analytic = hermite_pair(n, y).unwrap().derivative();
            prop_assert!((numeric - analytic).abs() <= 1e-6 * analytic.abs().max(1.0));
        }
    }
}
