//! Classical path families on the oscillator energy shell, their caustic,
//! and the quantum peak condition the caustic reproduces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::math::{find_root_with, hermite_unchecked, RootOptions};
use crate::params::WaveParams;
use crate::scalar::Scalar;
use crate::wavefunction::{density, energy};

/// One member of the classical family: phase-space point and its angle label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PhasePoint<T: Scalar> {
    pub x: T,
    pub p: T,
    pub theta: T,
}

/// The whole family at one time, `theta` uniform on `[0, 2 pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PathFamily<T: Scalar> {
    pub params: WaveParams<T>,
    pub t: T,
    pub thetas: Vec<T>,
    pub points: Vec<PhasePoint<T>>,
}

impl<T: Scalar> PathFamily<T> {
    /// Enclosed phase-space area of the closed polygon (shoelace formula).
    pub fn area(&self) -> T {
        let pts = &self.points;
        let n = pts.len();
        let twice = (0..n).fold(T::zero(), |acc, i| {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            acc + (a.x * b.p - b.x * a.p)
        });
        (twice / T::lit(2.0)).abs()
    }
}

/// One sign of the hyperbolic caustic sampled over time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CausticBranch<T: Scalar> {
    pub sign: i8,
    pub samples: Vec<(T, T)>,
}

/// Point on the energy shell `p^2/2m + m omega^2 x^2 / 2 = E_n` at angle `theta`.
pub fn initial_conditions<T: Scalar>(params: &WaveParams<T>, theta: T) -> PhasePoint<T> {
    let e = energy(params);
    let two = T::lit(2.0);
    let m = params.mass();
    let omega = params.omega();
    PhasePoint {
        x: (two * e / (m * omega * omega)).sqrt() * theta.cos(),
        p: (two * m * e).sqrt() * theta.sin(),
        theta,
    }
}

/// Free flight for time `t`: `p` fixed, `x` advances by `p t / m`.
pub fn evolve_path<T: Scalar>(point: PhasePoint<T>, t: T, mass: T) -> PhasePoint<T> {
    PhasePoint {
        x: point.x + point.p * t / mass,
        ..point
    }
}

/// `n_theta` uniformly spaced angles starting at zero.
pub fn uniform_thetas<T: Scalar>(n_theta: usize) -> Vec<T> {
    let step = T::TAU() / T::from_count(n_theta);
    (0..n_theta).map(|i| step * T::from_count(i)).collect()
}

/// The family of `n_theta` paths evolved to time `t`.
pub fn phase_space_snapshot<T: Scalar>(
    params: &WaveParams<T>,
    t: T,
    n_theta: usize,
) -> PathFamily<T> {
    assert!(n_theta >= 3, "a phase-space loop needs at least 3 points");
    let thetas = uniform_thetas(n_theta);
    let points = thetas
        .par_iter()
        .map(|&th| evolve_path(initial_conditions(params, th), t, params.mass()))
        .collect();
    PathFamily {
        params: *params,
        t,
        thetas,
        points,
    }
}

/// Envelope of the family, `(+x, -x)` with `x = sqrt(2 E_n / m) sqrt(t_c^2 + t^2)`.
pub fn caustic<T: Scalar>(params: &WaveParams<T>, t: T) -> (T, T) {
    let x = (T::lit(2.0) * energy(params) / params.mass()).sqrt() * params.spread(t).sqrt();
    (x, -x)
}

pub fn caustic_branches<T: Scalar>(params: &WaveParams<T>, times: &[T]) -> [CausticBranch<T>; 2] {
    let xs: Vec<(T, T)> = times.iter().map(|&t| caustic(params, t)).collect();
    [
        CausticBranch {
            sign: 1,
            samples: times.iter().zip(&xs).map(|(&t, c)| (t, c.0)).collect(),
        },
        CausticBranch {
            sign: -1,
            samples: times.iter().zip(&xs).map(|(&t, c)| (t, c.1)).collect(),
        },
    ]
}

/// `d x(t, theta) / d theta` for the free-flight family; zero where a path
/// touches the envelope.
pub fn path_theta_derivative<T: Scalar>(params: &WaveParams<T>, theta: T, t: T) -> T {
    let e = energy(params);
    let two = T::lit(2.0);
    let m = params.mass();
    let omega = params.omega();
    let x_amp = (two * e / (m * omega * omega)).sqrt();
    let p_amp = (two * m * e).sqrt();
    -x_amp * theta.sin() + p_amp * t / m * theta.cos()
}

/// The path that touches the `+` caustic at time `t`: starts from the best of
/// `n_theta` uniform samples and solves `d x / d theta = 0` next to it.
/// Returns `(theta, x)`.
pub fn envelope_touch<T: Scalar>(params: &WaveParams<T>, t: T, n_theta: usize) -> (T, T) {
    let x_at = |th: T| evolve_path(initial_conditions(params, th), t, params.mass()).x;
    let thetas = uniform_thetas::<T>(n_theta.max(3));
    let step = T::TAU() / T::from_count(thetas.len());
    let best = thetas
        .iter()
        .copied()
        .fold((T::zero(), T::neg_infinity()), |acc, th| {
            let x = x_at(th);
            if x > acc.1 {
                (th, x)
            } else {
                acc
            }
        });
    let refined = find_root_with(
        |th| path_theta_derivative(params, th, t),
        best.0 - step,
        best.0 + step,
        &RootOptions {
            x_tol: T::lit(1e-15),
            ..Default::default()
        },
    );
    match refined {
        Ok(th) if x_at(th) >= best.1 => (th, x_at(th)),
        _ => best,
    }
}

/// `2n H_{n-1}(xi) - xi H_n(xi)` as a function of the scaled coordinate.
pub fn peak_condition_residual_xi<T: Scalar>(n: u32, xi: T) -> T {
    let (h_n, h_nm1) = hermite_unchecked(n, xi);
    T::lit(2.0) * T::from_u32(n).unwrap() * h_nm1 - xi * h_n
}

/// Peak-condition residual at position `x` and time `t`; zero at density maxima.
pub fn peak_condition_residual<T: Scalar>(params: &WaveParams<T>, x: T, t: T) -> T {
    peak_condition_residual_xi(params.n(), params.xi_scale(t) * x)
}

/// Positions of all density maxima at time `t`, ascending.
pub fn find_peaks<T: Scalar>(params: &WaveParams<T>, t: T) -> Vec<T> {
    let n = params.n();
    let xi_max = params.level().sqrt() + T::lit(4.0);
    // even interval count keeps xi = 0 on a node
    let intervals = 64 * (n as usize + 1);
    let step = T::lit(2.0) * xi_max / T::from_count(intervals);
    let node = |i: usize| {
        if 2 * i == intervals {
            T::zero()
        } else {
            -xi_max + step * T::from_count(i)
        }
    };
    let f = |xi: T| peak_condition_residual_xi(n, xi);
    let opts = RootOptions {
        x_tol: T::lit(1e-14),
        ..Default::default()
    };

    let mut roots: Vec<T> = Vec::with_capacity(n as usize + 1);
    let mut prev = f(node(0));
    if prev == T::zero() {
        roots.push(node(0));
    }
    for i in 1..=intervals {
        let (a, b) = (node(i - 1), node(i));
        let cur = f(b);
        if cur == T::zero() {
            roots.push(b);
        } else if prev * cur < T::zero() {
            if let Ok(r) = find_root_with(f, a, b, &opts) {
                roots.push(r);
            }
        }
        prev = cur;
    }

    let scale = params.xi_scale(t);
    let h = T::lit(1e-3) / scale;
    roots
        .into_iter()
        .map(|xi| xi / scale)
        .filter(|&x| {
            let d0 = density(params, x, t);
            density(params, x - h, t) + density(params, x + h, t) - T::lit(2.0) * d0 < T::zero()
        })
        .collect()
}

/// Closed-form outer-peak locus for `n = 2`: `+-sqrt(5 hbar / (2 m t_c)) sqrt(t_c^2 + t^2)`.
/// The quantum number stored in `params` is ignored.
pub fn peak_hyperbola_n2<T: Scalar>(params: &WaveParams<T>, t: T) -> (T, T) {
    let x = (T::lit(5.0) * params.hbar() / (T::lit(2.0) * params.mass() * params.t_c())).sqrt()
        * params.spread(t).sqrt();
    (x, -x)
}
