//! Position and momentum moments, uncertainties, and the comparison table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{integrate_with, QuadratureOptions};
use crate::params::WaveParams;
use crate::scalar::Scalar;
use crate::wavefunction::{density, energy, psi, psi_dx};

/// First and second moments of `x` and `p` at one time, with derived spreads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MomentRow<T: Scalar> {
    pub t: T,
    pub mean_x: T,
    pub mean_x2: T,
    pub mean_p: T,
    pub mean_p2: T,
    pub var_x: T,
    pub var_p: T,
    pub uncertainty_product_sq: T,
}

impl<T: Scalar> MomentRow<T> {
    /// Builds a row from raw moments; variances follow `<a^2> - <a>^2`.
    pub fn from_moments(t: T, mean_x: T, mean_x2: T, mean_p: T, mean_p2: T) -> Self {
        let var_x = mean_x2 - mean_x * mean_x;
        let var_p = mean_p2 - mean_p * mean_p;
        Self {
            t,
            mean_x,
            mean_x2,
            mean_p,
            mean_p2,
            var_x,
            var_p,
            uncertainty_product_sq: var_x * var_p,
        }
    }

    pub fn satisfies_heisenberg(&self, hbar: T) -> bool {
        self.uncertainty_product_sq >= hbar * hbar / T::lit(4.0) - T::lit(1e-12)
    }

    /// Largest relative difference over the four raw moments. Entries whose
    /// reference is zero are compared absolutely.
    pub fn max_relative_delta(&self, reference: &Self) -> T {
        let d = |a: T, b: T| {
            let diff = (a - b).abs();
            if b == T::zero() {
                diff
            } else {
                diff / b.abs()
            }
        };
        [
            d(self.mean_x, reference.mean_x),
            d(self.mean_x2, reference.mean_x2),
            d(self.mean_p, reference.mean_p),
            d(self.mean_p2, reference.mean_p2),
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

/// Quadrature moments plus diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct NumericMoments<T: Scalar> {
    pub row: MomentRow<T>,
    /// `int |psi|^2 dx` over the same truncated domain.
    pub norm: T,
    /// Imaginary part of `<psi| -i hbar d/dx |psi>`.
    pub imag_mean_p: T,
    pub evaluations: usize,
}

/// Moments of `psi(., t)` by adaptive quadrature.
///
/// Momentum moments use the exact spatial derivative. The integration domain
/// is cut where the Gaussian envelope has decayed below double precision.
pub fn numeric_moments<T: Scalar>(
    params: &WaveParams<T>,
    t: T,
    tol: T,
) -> Result<NumericMoments<T>> {
    let cut = params.tail_cutoff(t);
    let opts = QuadratureOptions {
        rel_tol: tol,
        initial_panels: 8 + 4 * params.n() as usize,
        ..Default::default()
    };
    let mut evaluations = 0;
    let mut quad = |f: &dyn Fn(T) -> T| -> Result<T> {
        let r = integrate_with(f, -cut, cut, tol, &opts)?;
        evaluations += r.evaluations;
        Ok(r.value)
    };
    let hbar = params.hbar();

    let norm = quad(&|x| density(params, x, t))?;
    let mean_x = quad(&|x| x * density(params, x, t))?;
    let mean_x2 = quad(&|x| x * x * density(params, x, t))?;
    // conj(psi) (-i hbar psi') = hbar [Im(conj(psi) psi') - i Re(conj(psi) psi')]
    let mean_p = quad(&|x| hbar * (psi(params, x, t).conj() * psi_dx(params, x, t)).im)?;
    let imag_mean_p = quad(&|x| -hbar * (psi(params, x, t).conj() * psi_dx(params, x, t)).re)?;
    let mean_p2 = quad(&|x| hbar * hbar * psi_dx(params, x, t).norm_sqr())?;

    Ok(NumericMoments {
        row: MomentRow::from_moments(t, mean_x, mean_x2, mean_p, mean_p2),
        norm,
        imag_mean_p,
        evaluations,
    })
}

/// Closed-form row: `<x^2> = (2n+1) hbar/(2m) (t_c + t^2/t_c)`,
/// `<p^2> = (2n+1) hbar m / (2 t_c)`, `<x> = <p> = 0`.
pub fn closed_form_moments<T: Scalar>(params: &WaveParams<T>, t: T) -> MomentRow<T> {
    let two = T::lit(2.0);
    let level = params.level();
    let (hbar, m, tc) = (params.hbar(), params.mass(), params.t_c());
    let mean_x2 = level * hbar / (two * m) * (tc + t * t / tc);
    let mean_p2 = level * hbar * m / (two * tc);
    MomentRow::from_moments(t, T::zero(), mean_x2, T::zero(), mean_p2)
}

/// Both sides of `var_x(t) = var_x(0) + (var_p / m^2) t^2` from closed forms.
pub fn spreading_check<T: Scalar>(params: &WaveParams<T>, t: T) -> (T, T) {
    spreading_check_rows(
        &closed_form_moments(params, T::zero()),
        &closed_form_moments(params, t),
        params.mass(),
    )
}

/// Spreading law for any pair of rows, e.g. quadrature output.
pub fn spreading_check_rows<T: Scalar>(
    at_zero: &MomentRow<T>,
    at_t: &MomentRow<T>,
    mass: T,
) -> (T, T) {
    let t = at_t.t;
    (
        at_t.var_x,
        at_zero.var_x + at_zero.var_p / (mass * mass) * t * t,
    )
}

/// Velocity and acceleration of the rest-frame Airy packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AiryParams<T: Scalar> {
    v: T,
    a: T,
}

impl<T: Scalar> AiryParams<T> {
    pub fn new(v: T, a: T) -> Result<Self> {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::Domain(format!(
                "Airy velocity v must be positive, got {v}"
            )));
        }
        if !(a > T::zero() && a.is_finite()) {
            return Err(Error::Domain(format!(
                "Airy acceleration a must be positive so that t_c = v/a > 0, got {a}"
            )));
        }
        Ok(Self { v, a })
    }
    pub fn v(&self) -> T {
        self.v
    }
    pub fn a(&self) -> T {
        self.a
    }
    /// The boost velocity; always zero here.
    pub fn u(&self) -> T {
        T::zero()
    }
    pub fn t_c(&self) -> T {
        self.v / self.a
    }
}

/// Tabulated Airy row. `<x^2>` is rebuilt from `<x>` and the position
/// variance; the uncertainty product is the tabulated expression, not
/// `var_x * var_p` (see [`airy_consistency_gap`]).
pub fn airy_closed_forms<T: Scalar>(airy: &AiryParams<T>, m: T, hbar: T, t: T) -> MomentRow<T> {
    let two = T::lit(2.0);
    let (v, a, tc) = (airy.v(), airy.a(), airy.t_c());
    let mean_x = v * v / (two * a) - hbar / (T::lit(4.0) * m * v);
    let var_x = airy_var_x(airy, m, hbar, t);
    let mean_p2 = hbar * m / (two * tc);
    let product =
        hbar * hbar / T::lit(4.0) * (T::one() + hbar / (m * v * v * tc) + t * t / (tc * tc));
    MomentRow {
        t,
        mean_x,
        mean_x2: var_x + mean_x * mean_x,
        mean_p: T::zero(),
        mean_p2,
        var_x,
        var_p: mean_p2,
        uncertainty_product_sq: product,
    }
}

/// `(hbar / m v)^2 / 8 + hbar/(2m) (t_c + t^2/t_c)`.
pub fn airy_var_x<T: Scalar>(airy: &AiryParams<T>, m: T, hbar: T, t: T) -> T {
    let tc = airy.t_c();
    let r = hbar / (m * airy.v());
    r * r / T::lit(8.0) + hbar / (T::lit(2.0) * m) * (tc + t * t / tc)
}

/// `var_x * var_p - product` for the tabulated Airy row. Zero would mean the
/// tabulated product agrees with the tabulated variances.
pub fn airy_consistency_gap<T: Scalar>(row: &MomentRow<T>) -> T {
    row.var_x * row.var_p - row.uncertainty_product_sq
}

/// One line of the comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TableEntry<T: Scalar> {
    pub label: String,
    pub n: Option<u32>,
    pub t: T,
    pub closed_form: MomentRow<T>,
    pub numeric: Option<MomentRow<T>>,
    /// Largest relative numeric-vs-closed-form moment difference.
    pub max_delta: Option<T>,
    pub imag_mean_p: Option<T>,
    /// `<p^2> / 2m` from the reported moments.
    pub energy: T,
    /// Expected energy `(n + 1/2) hbar / (2 t_c)` for Hermite rows.
    pub expected_energy: Option<T>,
    pub heisenberg_ok: bool,
    /// `var_x * var_p - (dx dp)^2`, informational, Airy only.
    pub consistency_gap: Option<T>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TableReport<T: Scalar> {
    pub hbar: T,
    pub mass: T,
    pub tolerance: T,
    pub entries: Vec<TableEntry<T>>,
    pub passed: bool,
}

fn hermite_label(n: u32) -> String {
    if n == 0 {
        "Gaussian (n=0)".to_string()
    } else {
        format!("Hermite (n={n})")
    }
}

/// Builds the table: one Airy row and one row per wavefunction per time.
///
/// Hermite rows pass when every moment matches to `tolerance`, the energy
/// matches, the imaginary part of `<p>` is below `tolerance`, and the
/// Heisenberg bound holds. The Airy row passes on the Heisenberg bound alone.
pub fn table_report<T: Scalar>(
    params: &[WaveParams<T>],
    airy: &AiryParams<T>,
    times: &[T],
    tolerance: T,
    quad_tol: T,
) -> Result<TableReport<T>> {
    let first = params
        .first()
        .ok_or_else(|| Error::Domain("table needs at least one wavefunction".into()))?;
    if times.is_empty() {
        return Err(Error::Domain("table needs at least one time".into()));
    }
    let (hbar, mass) = (first.hbar(), first.mass());
    let two = T::lit(2.0);
    let mut entries = Vec::new();

    for &t in times {
        let row = airy_closed_forms(airy, mass, hbar, t);
        let heisenberg_ok = row.satisfies_heisenberg(hbar);
        entries.push(TableEntry {
            label: "Airy".into(),
            n: None,
            t,
            closed_form: row,
            numeric: None,
            max_delta: None,
            imag_mean_p: None,
            energy: row.mean_p2 / (two * mass),
            expected_energy: None,
            heisenberg_ok,
            consistency_gap: Some(airy_consistency_gap(&row)),
            passed: heisenberg_ok,
        });
        for p in params {
            let closed = closed_form_moments(p, t);
            let num = numeric_moments(p, t, quad_tol)?;
            let delta = num.row.max_relative_delta(&closed);
            let e = num.row.mean_p2 / (two * p.mass());
            let expected = energy(p);
            let heisenberg_ok =
                num.row.satisfies_heisenberg(p.hbar()) && closed.satisfies_heisenberg(p.hbar());
            let passed = delta <= tolerance
                && (e - expected).abs() <= tolerance * expected
                && num.imag_mean_p.abs() <= tolerance
                && heisenberg_ok;
            entries.push(TableEntry {
                label: hermite_label(p.n()),
                n: Some(p.n()),
                t,
                closed_form: closed,
                numeric: Some(num.row),
                max_delta: Some(delta),
                imag_mean_p: Some(num.imag_mean_p),
                energy: e,
                expected_energy: Some(expected),
                heisenberg_ok,
                consistency_gap: None,
                passed,
            });
        }
    }
    let passed = entries.iter().all(|e| e.passed);
    Ok(TableReport {
        hbar,
        mass,
        tolerance,
        entries,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn au(n: u32) -> WaveParams<f64> {
        WaveParams::atomic(n, 1.0).unwrap()
    }

    #[test]
    fn numeric_n2_at_zero() {
        let m = numeric_moments(&au(2), 0.0, 1e-12).unwrap();
        assert!(m.row.mean_x.abs() < 1e-10 && m.row.mean_p.abs() < 1e-10);
        assert!((m.row.mean_x2 - 5.0).abs() < 1e-8);
        assert!((m.row.mean_p2 - 1.25).abs() < 1e-8);
        assert!((m.norm - 1.0).abs() < 1e-10);
        assert!(m.imag_mean_p.abs() < 1e-10);
    }

    #[test]
    fn numeric_gaussian_spreads() {
        let m = numeric_moments(&au(0), 1.0, 1e-12).unwrap();
        assert!((m.row.mean_x2 - 2.0).abs() < 1e-8);
    }

    #[test]
    fn closed_form_rows() {
        let r = closed_form_moments(&au(1), 0.0);
        assert_eq!((r.mean_x2, r.mean_p2), (3.0, 0.75));
        assert!((r.uncertainty_product_sq - 2.25).abs() < 1e-15);
        let r = closed_form_moments(&au(2), 1.0);
        assert!((r.uncertainty_product_sq - 12.5).abs() < 1e-14);
        let r = closed_form_moments(&au(0), 0.0);
        assert!((r.uncertainty_product_sq - 0.25).abs() < 1e-16);
    }

    #[test]
    fn spreading_examples() {
        let (l, r) = spreading_check(&au(2), 2.0);
        assert_eq!((l, r), (25.0, 25.0));
        let (l, r) = spreading_check(&au(0), 3.0);
        assert_eq!((l, r), (10.0, 10.0));
        let (l, r) = spreading_check(&au(4), 0.0);
        assert_eq!(l, r);
    }

    #[test]
    fn airy_row() {
        let airy = AiryParams::new(1.0, 1.0).unwrap();
        let row = airy_closed_forms(&airy, 0.5, 1.0, 0.0);
        assert_eq!(row.mean_x, 0.0);
        assert_eq!(row.mean_p2, 0.25);
        assert_eq!(row.var_x, 1.5);
        assert_eq!(row.uncertainty_product_sq, 0.75);
        assert_eq!(row.mean_p2, closed_form_moments(&au(0), 0.0).mean_p2);
        assert!(AiryParams::new(0.0, 1.0).is_err());
        assert!(AiryParams::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn airy_tabulated_product_disagrees_with_variances() {
        let airy = AiryParams::<f64>::new(1.0, 1.0).unwrap();
        let row = airy_closed_forms(&airy, 0.5, 1.0, 0.0);
        // 1.5 * 0.25 = 0.375 against the tabulated 0.75
        assert!((airy_consistency_gap(&row) + 0.375).abs() < 1e-15);
    }

    #[test]
    fn report_default_rows() {
        let params: Vec<_> = (0..3).map(au).collect();
        let airy = AiryParams::new(1.0, 1.0).unwrap();
        let rep = table_report(&params, &airy, &[0.0], 1e-8, 1e-12).unwrap();
        assert_eq!(rep.entries.len(), 4);
        assert!(rep.passed);
        for e in &rep.entries {
            assert!(e.heisenberg_ok);
            if let Some(exp) = e.expected_energy {
                assert!((e.energy - exp).abs() < 1e-8);
            }
        }
        let strict = table_report(&params, &airy, &[0.0], 1e-30, 1e-12).unwrap();
        assert!(!strict.passed);
        assert!(table_report(&[], &airy, &[0.0], 1e-8, 1e-12).is_err());
    }
}
