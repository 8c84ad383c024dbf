//! End-to-end self-check of the analytic wavefunction.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::math::{integrate_with, QuadratureOptions};
use crate::params::WaveParams;
use crate::propagator::{compare_fields, initial_field, spectral_propagate, SpectralGrid};
use crate::scalar::Scalar;
use crate::semiclassics::{caustic, find_peaks, peak_hyperbola_n2};
use crate::wavefunction::{density, psi, psi_initial, residual_sweep, sample_psi, Chirp};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VerifyOptions<T: Scalar> {
    pub params: WaveParams<T>,
    /// Periodic box for the spectral comparison.
    pub oracle_length: T,
    pub oracle_nx: usize,
    pub oracle_times: Vec<T>,
    pub normalization_times: Vec<T>,
    /// Probe point and first step of the residual convergence sweep.
    pub residual_x: T,
    pub residual_t: T,
    pub residual_steps: Vec<T>,
    /// Replace the wavefunction in the residual sweep by one with a wrong chirp sign.
    pub chirp: Chirp,
}

impl<T: Scalar> VerifyOptions<T> {
    pub fn new(params: WaveParams<T>) -> Self {
        Self {
            params,
            oracle_length: T::lit(80.0),
            oracle_nx: 4096,
            oracle_times: vec![T::lit(0.5), T::one(), T::lit(2.0)],
            normalization_times: [-5.0, -2.0, 0.0, 1.0, 2.0, 5.0].map(T::lit).to_vec(),
            residual_x: T::lit(1.3),
            residual_t: T::lit(0.7),
            residual_steps: [1e-2, 5e-3, 2.5e-3, 1.25e-3].map(T::lit).to_vec(),
            chirp: Chirp::Standard,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst measured quantity for the check.
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn check(name: &str, measured: f64, threshold: f64, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        measured,
        threshold,
        detail,
    }
}

/// Largest `|psi(x, 0) - psi_initial(x)|` over `samples` points in `[-half, half]`.
pub fn t0_identity_error<T: Scalar>(params: &WaveParams<T>, half: T, samples: usize) -> T {
    let step = T::lit(2.0) * half / T::from_count(samples - 1);
    (0..samples)
        .map(|i| {
            let x = -half + step * T::from_count(i);
            (psi(params, x, T::zero())
                - num_complex::Complex::new(psi_initial(params, x), T::zero()))
            .norm()
        })
        .fold(T::zero(), T::max)
}

/// `int |psi(x, t)|^2 dx` over the envelope-truncated line.
pub fn normalization<T: Scalar>(params: &WaveParams<T>, t: T, tol: T) -> Result<T> {
    let cut = params.tail_cutoff(t);
    let opts = QuadratureOptions {
        initial_panels: 8 + 4 * params.n() as usize,
        ..Default::default()
    };
    Ok(integrate_with(|x| density(params, x, t), -cut, cut, tol, &opts)?.value)
}

pub fn run<T: Scalar>(opts: &VerifyOptions<T>) -> VerifyReport {
    let p = &opts.params;
    let mut checks = Vec::new();

    let e = t0_identity_error(p, T::lit(10.0), 2001).as_f64();
    checks.push(check(
        "t0_identity",
        e,
        1e-12,
        e < 1e-12,
        "max |psi(x,0) - oscillator eigenfunction| on [-10,10]".into(),
    ));

    let mut worst = 0.0_f64;
    let mut failure = None;
    for &t in &opts.normalization_times {
        match normalization(p, t, T::lit(1e-12)) {
            Ok(v) => worst = worst.max((v.as_f64() - 1.0).abs()),
            Err(e) => failure = Some(format!("t = {t}: {e}")),
        }
    }
    checks.push(match failure {
        Some(d) => check("normalization", f64::NAN, 1e-8, false, d),
        None => check(
            "normalization",
            worst,
            1e-8,
            worst < 1e-8,
            "max |int |psi|^2 - 1| over sampled t".into(),
        ),
    });

    let sweep = residual_sweep(
        p,
        opts.residual_x,
        opts.residual_t,
        &opts.residual_steps,
        opts.chirp,
    );
    let ratios: Vec<f64> = sweep
        .windows(2)
        .map(|w| (w[0].magnitude / w[1].magnitude).as_f64())
        .collect();
    let worst_ratio = ratios.iter().copied().fold(4.0_f64, |a, r| {
        if (r - 4.0).abs() > (a - 4.0).abs() {
            r
        } else {
            a
        }
    });
    let ok = !ratios.is_empty() && ratios.iter().all(|r| (3.6..=4.4).contains(r));
    checks.push(check(
        "residual_convergence",
        worst_ratio,
        4.0,
        ok,
        format!(
            "residual ratios h/(h/2) {:?}, accepted range [3.6, 4.4]; magnitudes {:?}",
            ratios,
            sweep
                .iter()
                .map(|s| s.magnitude.as_f64())
                .collect::<Vec<_>>()
        ),
    ));

    let oracle = SpectralGrid::new(opts.oracle_length, opts.oracle_nx).and_then(|grid| {
        let init = initial_field(p, &grid);
        let mut worst = T::zero();
        for &t in &opts.oracle_times {
            let evolved = spectral_propagate(&init, t, p.mass(), p.hbar())?;
            let exact = sample_psi(p, &grid.grid(), t);
            worst = worst.max(compare_fields(&exact, &evolved)?.aligned_max_abs_error);
        }
        Ok(worst)
    });
    checks.push(match oracle {
        Ok(w) => check(
            "spectral_oracle",
            w.as_f64(),
            1e-6,
            w.as_f64() < 1e-6,
            format!(
                "phase-aligned max |analytic - spectral|, L = {}, nx = {}",
                opts.oracle_length, opts.oracle_nx
            ),
        ),
        Err(e) => check("spectral_oracle", f64::NAN, 1e-6, false, e.to_string()),
    });

    // The closed-form identity is specific to n = 2.
    let p2 = p.with_n(2);
    let mut closed = 0.0_f64;
    let mut peaks = 0.0_f64;
    for i in 0..401 {
        let t = T::lit(-4.0) + T::lit(0.02) * T::from_count(i);
        let (c, _) = caustic(&p2, t);
        let (h, _) = peak_hyperbola_n2(&p2, t);
        closed = closed.max((c - h).abs().as_f64());
        if i % 50 == 0 {
            let pk = find_peaks(&p2, t);
            let outer = pk.last().copied().unwrap_or(T::nan());
            peaks = peaks.max((outer - c).abs().as_f64());
        }
    }
    checks.push(check(
        "caustic_peak_identity",
        closed,
        1e-12,
        closed < 1e-12,
        "max |caustic - peak hyperbola| over 401 t in [-4,4], n = 2".into(),
    ));
    checks.push(check(
        "caustic_peak_roots",
        peaks,
        1e-8,
        peaks < 1e-8,
        "max |outermost density maximum - caustic| at 9 t in [-4,4], n = 2".into(),
    ));

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        let rep = run(&VerifyOptions::new(WaveParams::atomic(2, 1.0_f64).unwrap()));
        for c in &rep.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(rep.passed);
    }

    #[test]
    fn flipped_chirp_fails_residual_only() {
        let mut o = VerifyOptions::new(WaveParams::atomic(2, 1.0_f64).unwrap());
        o.chirp = Chirp::Flipped;
        let rep = run(&o);
        assert!(!rep.passed);
        let failed: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, vec!["residual_convergence"]);
    }

    #[test]
    fn small_box_is_reported() {
        let mut o = VerifyOptions::new(WaveParams::atomic(2, 1.0_f64).unwrap());
        o.oracle_length = 10.0;
        o.oracle_nx = 512;
        let rep = run(&o);
        let c = rep
            .checks
            .iter()
            .find(|c| c.name == "spectral_oracle")
            .unwrap();
        assert!(!c.passed);
        assert!(c.detail.contains("grid too small"), "{}", c.detail);
    }
}
