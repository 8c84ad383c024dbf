//! Physical parameters and sampling grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::ln_factorial;
use crate::scalar::Scalar;

/// Quantum number, timescale and constants of a Hermite wavepacket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct WaveParams<T: Scalar> {
    n: u32,
    t_c: T,
    hbar: T,
    mass: T,
}

impl<T: Scalar> WaveParams<T> {
    pub fn new(n: u32, t_c: T, hbar: T, mass: T) -> Result<Self> {
        let positive = |v: T, name: &str| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive(t_c, "t_c")?;
        positive(hbar, "hbar")?;
        positive(mass, "mass")?;
        Ok(Self { n, t_c, hbar, mass })
    }

    /// Atomic units with `hbar = 1` and `m = 1/2`.
    pub fn atomic(n: u32, t_c: T) -> Result<Self> {
        Self::new(n, t_c, T::one(), T::lit(0.5))
    }

    pub fn with_n(self, n: u32) -> Self {
        Self { n, ..self }
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn t_c(&self) -> T {
        self.t_c
    }
    pub fn hbar(&self) -> T {
        self.hbar
    }
    pub fn mass(&self) -> T {
        self.mass
    }

    /// Oscillator frequency of the `t = 0` state, `1/t_c`.
    pub fn omega(&self) -> T {
        self.t_c.recip()
    }

    /// `2n + 1` as a scalar.
    pub(crate) fn level(&self) -> T {
        T::lit(2.0) * T::from_u32(self.n).unwrap() + T::one()
    }

    /// `t_c^2 + t^2`.
    pub(crate) fn spread(&self, t: T) -> T {
        self.t_c * self.t_c + t * t
    }

    /// Factor mapping `x` to the Hermite argument at time `t`.
    pub fn xi_scale(&self, t: T) -> T {
        (self.mass * self.t_c / (self.hbar * self.spread(t))).sqrt()
    }

    /// Standard deviation of the probability density at time `t`.
    pub fn sigma_x(&self, t: T) -> T {
        (self.level() * self.hbar / (T::lit(2.0) * self.mass) * self.spread(t) / self.t_c).sqrt()
    }

    /// Half-width beyond which the density is below `1e-16` of its mass.
    ///
    /// Uses a margin of 8 in the Hermite argument past the outermost classical
    /// turning point, where `exp(-xi^2) H_n(xi)^2` has long since died off.
    pub fn tail_cutoff(&self, t: T) -> T {
        (self.level().sqrt() + T::lit(8.0)) / self.xi_scale(t)
    }
}

/// Natural log of `sqrt(1/n!) (m / (hbar t_c pi))^(1/4) 2^(-n/2)`.
pub fn log_norm_constant<T: Scalar>(params: &WaveParams<T>) -> T {
    let n = T::from_u32(params.n).unwrap();
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    -half * ln_factorial::<T>(params.n)
        + quarter * (params.mass / (params.hbar * params.t_c * T::PI())).ln()
        - half * n * T::LN_2()
}

/// Optional time axis attached to a [`GridSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TimeAxis<T: Scalar> {
    pub t_min: T,
    pub t_max: T,
    pub nt: usize,
}

/// Uniform spatial sampling, optionally with a uniform time axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GridSpec<T: Scalar> {
    pub x_min: T,
    pub x_max: T,
    pub nx: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeAxis<T>>,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, nx: usize) -> Result<Self> {
        let g = Self {
            x_min,
            x_max,
            nx,
            time: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_time(mut self, t_min: T, t_max: T, nt: usize) -> Result<Self> {
        self.time = Some(TimeAxis { t_min, t_max, nt });
        self.validate()?;
        Ok(self)
    }

    /// Symmetric grid spanning 8 standard deviations of the density at `t`.
    pub fn auto(params: &WaveParams<T>, t: T, nx: usize) -> Result<Self> {
        let half = T::lit(8.0) * params.sigma_x(t);
        Self::new(-half, half, nx)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::Domain(format!(
                "grid needs finite x_max > x_min, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.nx < 2 {
            return Err(Error::Domain(format!(
                "grid needs nx >= 2, got {}",
                self.nx
            )));
        }
        if let Some(ax) = &self.time {
            if !(ax.t_min.is_finite() && ax.t_max.is_finite()) || ax.nt == 0 {
                return Err(Error::Domain(
                    "time axis needs finite bounds and nt >= 1".into(),
                ));
            }
            if ax.nt > 1 && ax.t_max <= ax.t_min {
                return Err(Error::Domain(format!(
                    "time axis needs t_max > t_min, got [{}, {}]",
                    ax.t_min, ax.t_max
                )));
            }
        }
        Ok(())
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::from_count(self.nx - 1)
    }

    pub fn x(&self, i: usize) -> T {
        if i + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + self.dx() * T::from_count(i)
        }
    }

    pub fn xs(&self) -> Vec<T> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    /// Time samples; a single `t = 0` when no axis is attached.
    pub fn ts(&self) -> Vec<T> {
        match &self.time {
            None => vec![T::zero()],
            Some(ax) if ax.nt == 1 => vec![ax.t_min],
            Some(ax) => {
                let dt = (ax.t_max - ax.t_min) / T::from_count(ax.nt - 1);
                (0..ax.nt)
                    .map(|j| {
                        if j + 1 == ax.nt {
                            ax.t_max
                        } else {
                            ax.t_min + dt * T::from_count(j)
                        }
                    })
                    .collect()
            }
        }
    }
}
