//! Free-particle Hermite wavepackets.
//!
//! A solution of the free Schrödinger equation whose time and space
//! dependence do not separate: at `t = 0` it is the `n`-th oscillator
//! eigenstate with `omega = 1/t_c`, and for `t != 0` its outer density peaks
//! travel along hyperbolae that coincide with the caustic of the classical
//! path family launched from the oscillator energy shell.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the usual double-precision choice.

pub mod error;
pub mod math;
pub mod observables;
pub mod params;
pub mod propagator;
pub mod scalar;
pub mod semiclassics;
pub mod verify;
pub mod wavefunction;

pub use error::{Error, Result};
pub use observables::{
    airy_closed_forms, airy_consistency_gap, airy_var_x, closed_form_moments, numeric_moments,
    spreading_check, spreading_check_rows, table_report, AiryParams, MomentRow, NumericMoments,
    TableEntry, TableReport,
};
pub use params::{log_norm_constant, GridSpec, TimeAxis, WaveParams};
pub use propagator::{
    compare_fields, initial_field, spectral_propagate, FieldComparison, SpectralGrid,
};
pub use scalar::Scalar;
pub use semiclassics::{
    caustic, caustic_branches, envelope_touch, evolve_path, find_peaks, initial_conditions,
    peak_condition_residual, peak_hyperbola_n2, phase_space_snapshot, CausticBranch, PathFamily,
    PhasePoint,
};
pub use wavefunction::{
    density, density_grid, energy, psi, psi_dx, psi_initial, residual_sweep, sample_psi,
    schrodinger_residual, Chirp, ComplexAmplitude, ComplexField, DensityField,
};

pub type WaveParams64 = WaveParams<f64>;
pub type WaveParams32 = WaveParams<f32>;
pub type GridSpec64 = GridSpec<f64>;
pub type ComplexField64 = ComplexField<f64>;
pub type DensityField64 = DensityField<f64>;
pub type SpectralGrid64 = SpectralGrid<f64>;
pub type MomentRow64 = MomentRow<f64>;
pub type PhasePoint64 = PhasePoint<f64>;
pub type PathFamily64 = PathFamily<f64>;
pub type AiryParams64 = AiryParams<f64>;
