//! Exact free evolution in momentum space, used as an independent check on
//! the analytic wavefunction.
//!
//! Free motion is diagonal in `k`, so a single multiplication by
//! `exp(-i hbar k^2 t / 2m)` between a forward and inverse DFT evolves the
//! sampled state over any time with no splitting error. The only errors left
//! are aliasing and the periodic wrap of the box.

use num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{GridSpec, WaveParams};
use crate::scalar::Scalar;
use crate::wavefunction::{psi_initial, ComplexField};

/// Periodic box `[-L/2, L/2)` with a power-of-two node count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SpectralGrid<T: Scalar> {
    length: T,
    nx: usize,
}

impl<T: Scalar> SpectralGrid<T> {
    pub fn new(length: T, nx: usize) -> Result<Self> {
        if !(length > T::zero() && length.is_finite()) {
            return Err(Error::Domain(format!(
                "box length must be positive, got {length}"
            )));
        }
        if nx < 2 || !nx.is_power_of_two() {
            return Err(Error::Domain(format!(
                "nx must be a power of two >= 2, got {nx}"
            )));
        }
        Ok(Self { length, nx })
    }

    /// Recovers the box from a field grid laid out by [`SpectralGrid::grid`].
    pub fn from_grid(grid: &GridSpec<T>) -> Result<Self> {
        let length = grid.dx() * T::from_count(grid.nx);
        let g = Self::new(length, grid.nx)?;
        let tol = T::lit(1e3) * T::epsilon() * length;
        if (grid.x_min + g.length / T::lit(2.0)).abs() > tol {
            return Err(Error::Shape(format!(
                "grid starting at {} is not a centred periodic box of length {}",
                grid.x_min, g.length
            )));
        }
        Ok(g)
    }

    pub fn length(&self) -> T {
        self.length
    }
    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn dx(&self) -> T {
        self.length / T::from_count(self.nx)
    }

    /// Nodes `x_j = -L/2 + j dx`; the right edge `L/2` is the periodic image of the left.
    pub fn grid(&self) -> GridSpec<T> {
        let half = self.length / T::lit(2.0);
        GridSpec {
            x_min: -half,
            x_max: half - self.dx(),
            nx: self.nx,
            time: None,
        }
    }

    /// Wavenumbers in DFT order: `0, 1, ..., nx/2 - 1, -nx/2, ..., -1` times `2 pi / L`.
    pub fn wavenumbers(&self) -> Vec<T> {
        let dk = T::TAU() / self.length;
        let n = self.nx as i64;
        (0..n)
            .map(|j| {
                let signed = if j < n / 2 { j } else { j - n };
                dk * T::from_i64(signed).unwrap()
            })
            .collect()
    }
}

/// Oscillator eigenstate sampled on a periodic box; the `t = 0` data.
pub fn initial_field<T: Scalar>(params: &WaveParams<T>, grid: &SpectralGrid<T>) -> ComplexField<T> {
    let g = grid.grid();
    let values = (0..g.nx)
        .map(|i| Complex::new(psi_initial(params, g.x(i)), T::zero()))
        .collect();
    ComplexField {
        grid: g,
        t: T::zero(),
        values,
    }
}

fn forward<T: Scalar>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = values.to_vec();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    buf
}

fn inverse<T: Scalar>(mut spectrum: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let n = spectrum.len();
    FftPlanner::new().plan_fft_inverse(n).process(&mut spectrum);
    let scale = T::from_count(n).recip();
    spectrum.iter_mut().for_each(|v| *v = *v * scale);
    spectrum
}

/// Position spread of the field after free flight for time `t`, from its
/// discrete moments: `var(t) = var_x + 2 t cov_xp / m + var_p t^2 / m^2`.
fn projected_spread<T: Scalar>(
    field: &ComplexField<T>,
    grid: &SpectralGrid<T>,
    spectrum: &[Complex<T>],
    t: T,
    m: T,
    hbar: T,
) -> (T, T) {
    let xs = grid.grid().xs();
    let ks = grid.wavenumbers();
    let norm_x = field.values.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
    let norm_k = spectrum.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
    let mean = |w: &dyn Fn(usize) -> T, vals: &[Complex<T>], norm: T| {
        vals.iter()
            .enumerate()
            .fold(T::zero(), |a, (i, v)| a + w(i) * v.norm_sqr())
            / norm
    };
    let mx = mean(&|i| xs[i], &field.values, norm_x);
    let mx2 = mean(&|i| xs[i] * xs[i], &field.values, norm_x);
    let mk = mean(&|i| ks[i], spectrum, norm_k);
    let mk2 = mean(&|i| ks[i] * ks[i], spectrum, norm_k);
    let var_x = (mx2 - mx * mx).max(T::zero());
    let var_p = hbar * hbar * (mk2 - mk * mk).max(T::zero());

    // symmetrised <xp> = hbar Im sum conj(psi) x dpsi/dx
    let dpsi = inverse(
        spectrum
            .iter()
            .zip(&ks)
            .map(|(v, &k)| *v * Complex::new(T::zero(), k))
            .collect(),
    );
    let xp = field
        .values
        .iter()
        .zip(&dpsi)
        .zip(&xs)
        .fold(T::zero(), |a, ((v, d), &x)| a + (v.conj() * *d).im * x)
        * hbar
        / norm_x;
    let cov = xp - mx * hbar * mk;

    let var_t = var_x + T::lit(2.0) * t * cov / m + var_p * t * t / (m * m);
    (mx + hbar * mk * t / m, var_t.max(T::zero()).sqrt())
}

/// Evolves `initial` freely by time `t` with mass `m` and `hbar`.
///
/// Refuses with [`Error::GridTooSmall`] when the evolved state, estimated from
/// its own moments, would come within 6 standard deviations of the box edge.
pub fn spectral_propagate<T: Scalar>(
    initial: &ComplexField<T>,
    t: T,
    m: T,
    hbar: T,
) -> Result<ComplexField<T>> {
    let grid = SpectralGrid::from_grid(&initial.grid)?;
    if initial.values.len() != grid.nx() {
        return Err(Error::Shape(format!(
            "{} values for a grid of {} nodes",
            initial.values.len(),
            grid.nx()
        )));
    }
    let spectrum = forward(&initial.values);

    let (mean, sigma) = projected_spread(initial, &grid, &spectrum, t, m, hbar);
    let half_width = grid.length() / T::lit(2.0);
    let reach = mean.abs() + T::lit(6.0) * sigma;
    if reach > half_width {
        return Err(Error::GridTooSmall {
            reach: reach.as_f64(),
            mean: mean.as_f64(),
            sigma: sigma.as_f64(),
            half_width: half_width.as_f64(),
        });
    }

    let coeff = hbar * t / (T::lit(2.0) * m);
    let evolved = spectrum
        .into_iter()
        .zip(grid.wavenumbers())
        .map(|(v, k)| v * Complex::from_polar(T::one(), -coeff * k * k))
        .collect();
    Ok(ComplexField {
        grid: initial.grid,
        t: initial.t + t,
        values: inverse(evolved),
    })
}

/// Pointwise and discrete-L2 differences between two fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FieldComparison<T: Scalar> {
    pub max_abs_error: T,
    pub l2_error: T,
    /// Same measures after rotating `b` onto `a` by a single global phase,
    /// taken at the sample where `|a|` is largest.
    pub aligned_max_abs_error: T,
    pub aligned_l2_error: T,
    pub norm_a: T,
    pub norm_b: T,
}

pub fn compare_fields<T: Scalar>(
    a: &ComplexField<T>,
    b: &ComplexField<T>,
) -> Result<FieldComparison<T>> {
    if a.grid != b.grid || a.values.len() != b.values.len() {
        return Err(Error::Shape("fields live on different grids".into()));
    }
    let tol = T::lit(1e3) * T::epsilon() * (T::one() + a.t.abs());
    if (a.t - b.t).abs() > tol {
        return Err(Error::Shape(format!(
            "fields at different times {} and {}",
            a.t, b.t
        )));
    }
    let dx = a.grid.dx();
    let measure = |rot: Complex<T>| {
        a.values
            .iter()
            .zip(&b.values)
            .fold((T::zero(), T::zero()), |(mx, l2), (u, v)| {
                let d = (*u - *v * rot).norm();
                (mx.max(d), l2 + d * d)
            })
    };
    let (max_abs_error, l2_sq) = measure(Complex::new(T::one(), T::zero()));

    let peak = a
        .values
        .iter()
        .enumerate()
        .fold((0, T::zero()), |best, (i, v)| {
            if v.norm() > best.1 {
                (i, v.norm())
            } else {
                best
            }
        })
        .0;
    let (ua, ub) = (a.values[peak], b.values[peak]);
    let rot = if ua.norm() > T::zero() && ub.norm() > T::zero() {
        Complex::from_polar(T::one(), ua.arg() - ub.arg())
    } else {
        Complex::new(T::one(), T::zero())
    };
    let (aligned_max, aligned_l2_sq) = measure(rot);

    Ok(FieldComparison {
        max_abs_error,
        l2_error: (l2_sq * dx).sqrt(),
        aligned_max_abs_error: aligned_max,
        aligned_l2_error: (aligned_l2_sq * dx).sqrt(),
        norm_a: a.norm(),
        norm_b: b.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefunction::sample_psi;

    fn default_box() -> SpectralGrid<f64> {
        SpectralGrid::new(80.0, 4096).unwrap()
    }

    #[test]
    fn grid_layout() {
        let g = SpectralGrid::new(8.0_f64, 8).unwrap();
        assert_eq!(
            g.grid().xs(),
            vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]
        );
        let k: Vec<f64> = g
            .wavenumbers()
            .iter()
            .map(|k| k / (std::f64::consts::TAU / 8.0))
            .collect();
        assert_eq!(k, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
        assert!(SpectralGrid::new(8.0_f64, 12).is_err());
        assert_eq!(SpectralGrid::from_grid(&g.grid()).unwrap(), g);
    }

    #[test]
    fn zero_time_round_trip() {
        let p = WaveParams::atomic(2, 1.0).unwrap();
        let init = initial_field(&p, &default_box());
        let out = spectral_propagate(&init, 0.0, 0.5, 1.0).unwrap();
        let c = compare_fields(&init, &out).unwrap();
        assert!(c.max_abs_error < 1e-13, "{}", c.max_abs_error);
    }

    #[test]
    fn gaussian_matches_analytic() {
        let p = WaveParams::atomic(0, 1.0).unwrap();
        let g = default_box();
        let out = spectral_propagate(&initial_field(&p, &g), 2.0, 0.5, 1.0).unwrap();
        let exact = sample_psi(&p, &g.grid(), 2.0);
        let c = compare_fields(&exact, &out).unwrap();
        assert!(c.max_abs_error < 1e-8, "{}", c.max_abs_error);
    }

    #[test]
    fn unitary_group_and_reversible() {
        let p = WaveParams::atomic(3, 1.0).unwrap();
        let init = initial_field(&p, &default_box());
        let a = spectral_propagate(&init, 0.8, 0.5, 1.0).unwrap();
        assert!((a.norm() - init.norm()).abs() < 1e-12);
        let ab = spectral_propagate(&a, 1.1, 0.5, 1.0).unwrap();
        let direct = spectral_propagate(&init, 1.9, 0.5, 1.0).unwrap();
        assert!(compare_fields(&ab, &direct).unwrap().max_abs_error < 1e-12);
        let back = spectral_propagate(&a, -0.8, 0.5, 1.0).unwrap();
        assert!(compare_fields(&init, &back).unwrap().max_abs_error < 1e-12);
    }

    #[test]
    fn refuses_small_box() {
        let p = WaveParams::atomic(2, 1.0).unwrap();
        let g = SpectralGrid::new(10.0, 512).unwrap();
        let err = spectral_propagate(&initial_field(&p, &g), 2.0, 0.5, 1.0).unwrap_err();
        match err {
            Error::GridTooSmall { sigma, .. } => assert!((sigma - 5.0).abs() < 0.5, "{sigma}"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn comparison_identities() {
        let p = WaveParams::atomic(1, 1.0).unwrap();
        let a = sample_psi(&p, &default_box().grid(), 0.7);
        let c = compare_fields(&a, &a).unwrap();
        assert_eq!(
            (c.max_abs_error, c.l2_error, c.aligned_max_abs_error),
            (0.0, 0.0, 0.0)
        );

        let mut b = a.clone();
        let phase = Complex::from_polar(1.0, 0.9);
        b.values.iter_mut().for_each(|v| *v *= phase);
        let c = compare_fields(&a, &b).unwrap();
        assert!(c.max_abs_error > 0.1);
        assert!(c.aligned_max_abs_error < 1e-14);

        let other = sample_psi(&p, &SpectralGrid::new(40.0, 4096).unwrap().grid(), 0.7);
        assert!(matches!(compare_fields(&a, &other), Err(Error::Shape(_))));
    }
}
