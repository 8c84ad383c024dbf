//! Analytic Hermite wavepacket of the free particle.
//!
//! ```text
//! psi(x, t) = N (1 + t^2/t_c^2)^(-1/4)
//!             exp(i m x^2 t / (2 hbar D)) exp(-i (n + 1/2) atan(t / t_c))
//!             exp(-m t_c x^2 / (2 hbar D)) H_n(sqrt(m t_c / (hbar D)) x),
//! D = t_c^2 + t^2
//! ```
//!
//! with `N` the constant returned by [`log_norm_constant`]. At `t = 0` this is
//! the `n`-th harmonic-oscillator eigenfunction with `omega = 1/t_c`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::hermite_unchecked;
use crate::params::{log_norm_constant, GridSpec, WaveParams};
use crate::scalar::Scalar;

/// Complex amplitude, units of length^(-1/2).
pub type ComplexAmplitude<T> = Complex<T>;

/// Complex samples of a wavefunction on a spatial grid at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ComplexField<T: Scalar> {
    pub grid: GridSpec<T>,
    pub t: T,
    pub values: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexField<T> {
    pub fn new(grid: GridSpec<T>, t: T, values: Vec<Complex<T>>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.nx {
            return Err(Error::Shape(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.nx
            )));
        }
        Ok(Self { grid, t, values })
    }

    /// Discrete norm `sum |psi|^2 dx`.
    pub fn norm(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
            * self.grid.dx()
    }
}

/// Real density samples on a grid at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DensityField<T: Scalar> {
    pub grid: GridSpec<T>,
    pub t: T,
    pub values: Vec<T>,
}

impl<T: Scalar> DensityField<T> {
    /// Indices of strict interior local maxima.
    pub fn local_maxima(&self) -> Vec<usize> {
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter(|&i| v[i] > v[i - 1] && v[i] > v[i + 1])
            .collect()
    }
}

/// Sign of the quadratic chirp phase. `Flipped` is a deliberately wrong
/// wavefunction used as a negative control for the PDE residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Chirp {
    #[default]
    Standard,
    Flipped,
}

/// Time-dependent pieces shared by the evaluators.
struct Frame<T> {
    xi_scale: T,
    // -m t_c / (2 hbar D), coefficient of x^2 in the log-envelope
    envelope: T,
    // m t / (2 hbar D), coefficient of x^2 in the phase
    chirp: T,
    log_amp: T,
    gouy: T,
}

impl<T: Scalar> Frame<T> {
    fn at(params: &WaveParams<T>, t: T) -> Self {
        let d = params.spread(t);
        let two_hbar_d = T::lit(2.0) * params.hbar() * d;
        let tc = params.t_c();
        let ratio = t / tc;
        Self {
            xi_scale: params.xi_scale(t),
            envelope: -params.mass() * tc / two_hbar_d,
            chirp: params.mass() * t / two_hbar_d,
            log_amp: log_norm_constant(params) - T::lit(0.25) * (T::one() + ratio * ratio).ln(),
            gouy: -(T::from_u32(params.n()).unwrap() + T::lit(0.5)) * t.atan2(tc),
        }
    }
}

/// `psi(x, t)`.
pub fn psi<T: Scalar>(params: &WaveParams<T>, x: T, t: T) -> Complex<T> {
    psi_with_chirp(params, x, t, Chirp::Standard)
}

pub fn psi_with_chirp<T: Scalar>(params: &WaveParams<T>, x: T, t: T, chirp: Chirp) -> Complex<T> {
    let f = Frame::at(params, t);
    let (h_n, _) = hermite_unchecked(params.n(), f.xi_scale * x);
    let x2 = x * x;
    let sign = match chirp {
        Chirp::Standard => T::one(),
        Chirp::Flipped => -T::one(),
    };
    let magnitude = (f.log_amp + f.envelope * x2).exp() * h_n;
    Complex::from_polar(magnitude, sign * f.chirp * x2 + f.gouy)
}

/// Spatial derivative `d psi / dx`, exact.
pub fn psi_dx<T: Scalar>(params: &WaveParams<T>, x: T, t: T) -> Complex<T> {
    let f = Frame::at(params, t);
    let xi = f.xi_scale * x;
    let (h_n, h_nm1) = hermite_unchecked(params.n(), xi);
    let x2 = x * x;
    let two = T::lit(2.0);
    let base = Complex::from_polar((f.log_amp + f.envelope * x2).exp(), f.chirp * x2 + f.gouy);
    // d/dx of exp(c x^2) H_n(s x) = exp(c x^2) [2 c x H_n + s 2n H_{n-1}]
    let c = Complex::new(f.envelope, f.chirp);
    let poly = c * (two * x * h_n)
        + Complex::new(
            f.xi_scale * two * T::from_u32(params.n()).unwrap() * h_nm1,
            T::zero(),
        );
    base * poly
}

/// Oscillator eigenfunction with `omega = 1/t_c`; real.
pub fn psi_initial<T: Scalar>(params: &WaveParams<T>, x: T) -> T {
    let m_omega_over_hbar = params.mass() * params.omega() / params.hbar();
    let n = params.n();
    let half = T::lit(0.5);
    let log_norm = T::lit(0.25) * (m_omega_over_hbar / T::PI()).ln()
        - half * (T::from_u32(n).unwrap() * T::LN_2() + crate::math::ln_factorial::<T>(n));
    let norm = log_norm.exp();
    let (h_n, _) = hermite_unchecked(n, m_omega_over_hbar.sqrt() * x);
    norm * (-m_omega_over_hbar * x * x / T::lit(2.0)).exp() * h_n
}

/// `|psi(x, t)|^2` from the phase-free closed form.
pub fn density<T: Scalar>(params: &WaveParams<T>, x: T, t: T) -> T {
    let f = Frame::at(params, t);
    let (h_n, _) = hermite_unchecked(params.n(), f.xi_scale * x);
    let two = T::lit(2.0);
    (two * (f.log_amp + f.envelope * x * x)).exp() * h_n * h_n
}

/// Density on every node of `grid` at time `t`, evaluated in parallel.
pub fn density_grid<T: Scalar>(
    params: &WaveParams<T>,
    grid: &GridSpec<T>,
    t: T,
) -> DensityField<T> {
    let values = (0..grid.nx)
        .into_par_iter()
        .map(|i| density(params, grid.x(i), t))
        .collect();
    DensityField {
        grid: *grid,
        t,
        values,
    }
}

/// `psi` sampled on every node of `grid` at time `t`.
pub fn sample_psi<T: Scalar>(params: &WaveParams<T>, grid: &GridSpec<T>, t: T) -> ComplexField<T> {
    let values = (0..grid.nx)
        .into_par_iter()
        .map(|i| psi(params, grid.x(i), t))
        .collect();
    ComplexField {
        grid: *grid,
        t,
        values,
    }
}

/// `E_n = (n + 1/2) hbar / (2 t_c)`.
pub fn energy<T: Scalar>(params: &WaveParams<T>) -> T {
    params.level() * params.hbar() / (T::lit(4.0) * params.t_c())
}

/// `i hbar d_t psi + (hbar^2 / 2m) d_xx psi` with centred differences.
pub fn schrodinger_residual<T: Scalar>(
    params: &WaveParams<T>,
    x: T,
    t: T,
    h_x: T,
    h_t: T,
) -> Complex<T> {
    pde_residual(
        |x, t| psi(params, x, t),
        params.hbar(),
        params.mass(),
        x,
        t,
        h_x,
        h_t,
    )
}

/// Residual of the free-particle equation for an arbitrary `psi(x, t)`.
pub fn pde_residual<T, F>(psi: F, hbar: T, mass: T, x: T, t: T, h_x: T, h_t: T) -> Complex<T>
where
    T: Scalar,
    F: Fn(T, T) -> Complex<T>,
{
    let two = T::lit(2.0);
    let dt = (psi(x, t + h_t) - psi(x, t - h_t)) / (two * h_t);
    let dxx = (psi(x + h_x, t) - psi(x, t) * two + psi(x - h_x, t)) / (h_x * h_x);
    Complex::new(T::zero(), hbar) * dt + dxx * (hbar * hbar / (two * mass))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ResidualSample<T: Scalar> {
    pub h: T,
    pub magnitude: T,
}

/// Residual magnitudes with `h_x = h_t = h` for each step in `steps`.
pub fn residual_sweep<T: Scalar>(
    params: &WaveParams<T>,
    x: T,
    t: T,
    steps: &[T],
    chirp: Chirp,
) -> Vec<ResidualSample<T>> {
    steps
        .iter()
        .map(|&h| {
            let r = pde_residual(
                |x, t| psi_with_chirp(params, x, t, chirp),
                params.hbar(),
                params.mass(),
                x,
                t,
                h,
                h,
            );
            ResidualSample {
                h,
                magnitude: r.norm(),
            }
        })
        .collect()
}
