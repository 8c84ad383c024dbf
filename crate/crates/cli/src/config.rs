use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use hermitewave::{AiryParams64, GridSpec, GridSpec64, WaveParams64};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything a subcommand needs. Every field has a default so a partial JSON
/// file is a valid config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: u32,
    pub t_c: f64,
    pub hbar: f64,
    pub mass: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub nt: usize,
    pub thetas: usize,
    /// Snapshot times for `phasespace` and `observables`; each has its own default.
    pub times: Option<Vec<f64>>,
    pub tol: f64,
    pub airy_v: f64,
    pub airy_a: f64,
    pub oracle_length: f64,
    pub oracle_nx: usize,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            t_c: 1.0,
            hbar: 1.0,
            mass: 0.5,
            x_min: -8.0,
            x_max: 8.0,
            nx: 321,
            t_min: -4.0,
            t_max: 4.0,
            nt: 81,
            thetas: 4096,
            times: None,
            tol: 1e-8,
            airy_v: 1.0,
            airy_a: 1.0,
            oracle_length: 80.0,
            oracle_nx: 4096,
            out: None,
            format: None,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> Result<WaveParams64, CliError> {
        WaveParams64::new(self.n, self.t_c, self.hbar, self.mass).map_err(CliError::config)
    }

    pub fn grid(&self) -> Result<GridSpec64, CliError> {
        GridSpec::new(self.x_min, self.x_max, self.nx)
            .and_then(|g| g.with_time(self.t_min, self.t_max, self.nt))
            .map_err(CliError::config)
    }

    pub fn airy(&self) -> Result<AiryParams64, CliError> {
        AiryParams64::new(self.airy_v, self.airy_a).map_err(CliError::config)
    }

    pub fn times_or(&self, default: &[f64]) -> Vec<f64> {
        self.times.clone().unwrap_or_else(|| default.to_vec())
    }

    /// Checks every invariant before any computation runs.
    pub fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        self.grid()?;
        self.airy()?;
        if self.thetas < 3 {
            return Err(CliError::Config(format!(
                "--thetas must be at least 3, got {}",
                self.thetas
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CliError::Config(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        if let Some(ts) = &self.times {
            if ts.is_empty() || ts.iter().any(|t| !t.is_finite()) {
                return Err(CliError::Config(
                    "--times needs at least one finite value".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Command-line overrides; anything left unset keeps the config/default value.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON config file to start from
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Quantum number
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Timescale t_c
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tc: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmin: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    #[arg(long, global = true)]
    pub nt: Option<usize>,
    /// Number of classical paths (uniform in angle)
    #[arg(long, global = true)]
    pub thetas: Option<usize>,
    /// Comma-separated snapshot times
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub times: Option<Vec<f64>>,
    /// Pass/fail tolerance for reports
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub airy_v: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub airy_a: Option<f64>,
    /// Box length for the spectral comparison
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub length: Option<f64>,
    /// Node count for the spectral comparison (power of two)
    #[arg(long, global = true)]
    pub oracle_nx: Option<usize>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Overrides {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        macro_rules! apply {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { cfg.$field = v; })*
            };
        }
        apply!(
            n => n, tc => t_c, hbar => hbar, mass => mass,
            xmin => x_min, xmax => x_max, nx => nx,
            tmin => t_min, tmax => t_max, nt => nt,
            thetas => thetas, tol => tol, airy_v => airy_v, airy_a => airy_a,
            length => oracle_length, oracle_nx => oracle_nx,
        );
        if self.times.is_some() {
            cfg.times = self.times.clone();
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if self.format.is_some() {
            cfg.format = self.format;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let cfg = RunConfig {
            times: Some(vec![0.0, 0.25, -1.5]),
            format: Some(Format::Json),
            out: Some("peaks.csv".into()),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn partial_json_fills_defaults() {
        let cfg: RunConfig = serde_json::from_str(r#"{"n": 4, "t_c": 2.0}"#).unwrap();
        assert_eq!(cfg.n, 4);
        assert_eq!(cfg.mass, 0.5);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.t_c = -1.0;
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        let cfg = RunConfig {
            nx: 1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            thetas: 2,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
