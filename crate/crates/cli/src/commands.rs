use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use hermitewave::semiclassics::uniform_thetas;
use hermitewave::verify::{self, VerifyOptions};
use hermitewave::{
    caustic, density_grid, evolve_path, find_peaks, initial_conditions, phase_space_snapshot,
    table_report, Chirp, WaveParams64,
};

use crate::config::{Format, RunConfig};
use crate::output::{Cell, Table};
use crate::CliError;

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
}

const OK: Outcome = Outcome { passed: true };

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_table(cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let mut w = open_output(cfg)?;
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => table.write_csv(&mut w)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &table.to_json())?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn emit_report<R: Serialize>(
    cfg: &RunConfig,
    report: &R,
    flat: impl FnOnce() -> Table,
) -> Result<(), CliError> {
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut w = open_output(cfg)?;
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
            w.flush()?;
            Ok(())
        }
        Format::Csv => emit_table(cfg, &flat()),
    }
}

/// Labels for `count` peaks sorted by position: `-k..-1, (0), 1..k`.
fn branch_labels(count: usize) -> Vec<i64> {
    let half = (count / 2) as i64;
    if count % 2 == 1 {
        (-half..=half).collect()
    } else {
        (-half..0).chain(1..=half).collect()
    }
}

pub fn density(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    let mut table = Table::new(&["x", "t", "density"]);
    for t in grid.ts() {
        let field = density_grid(&params, &grid, t);
        for (i, d) in field.values.iter().enumerate() {
            table.push(vec![grid.x(i).into(), t.into(), (*d).into()]);
        }
    }
    emit_table(cfg, &table)?;
    Ok(OK)
}

pub fn peaks(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let mut table = Table::new(&["t", "x_peak", "branch"]);
    for t in cfg.grid()?.ts() {
        let pk = find_peaks(&params, t);
        for (x, b) in pk.iter().zip(branch_labels(pk.len())) {
            table.push(vec![t.into(), (*x).into(), b.into()]);
        }
    }
    emit_table(cfg, &table)?;
    Ok(OK)
}

pub fn caustic_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let mut table = Table::new(&["t", "x_caustic", "branch"]);
    for t in cfg.grid()?.ts() {
        let (plus, minus) = caustic(&params, t);
        table.push(vec![t.into(), minus.into(), (-1i64).into()]);
        table.push(vec![t.into(), plus.into(), 1i64.into()]);
    }
    emit_table(cfg, &table)?;
    Ok(OK)
}

pub fn paths(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let ts = cfg.grid()?.ts();
    let mut table = Table::new(&["theta_index", "theta", "t", "x"]);
    for (i, theta) in uniform_thetas::<f64>(cfg.thetas).into_iter().enumerate() {
        let start = initial_conditions(&params, theta);
        for &t in &ts {
            let pt = evolve_path(start, t, params.mass());
            table.push(vec![i.into(), theta.into(), t.into(), pt.x.into()]);
        }
    }
    emit_table(cfg, &table)?;
    Ok(OK)
}

pub fn phasespace(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let mut table = Table::new(&["t", "theta_index", "theta", "x", "p"]);
    for t in cfg.times_or(&[0.0, 0.5, 1.0, 1.5]) {
        let fam = phase_space_snapshot(&params, t, cfg.thetas);
        for (i, pt) in fam.points.iter().enumerate() {
            table.push(vec![
                t.into(),
                i.into(),
                pt.theta.into(),
                pt.x.into(),
                pt.p.into(),
            ]);
        }
    }
    emit_table(cfg, &table)?;
    Ok(OK)
}

/// Wavefunctions in the table: the Gaussian and `n = 1, 2`, plus the configured `n`.
fn table_params(cfg: &RunConfig) -> Result<Vec<WaveParams64>, CliError> {
    let base = cfg.params()?;
    let mut ns = vec![0, 1, 2];
    if !ns.contains(&cfg.n) {
        ns.push(cfg.n);
    }
    Ok(ns.into_iter().map(|n| base.with_n(n)).collect())
}

pub fn observables(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = table_report(
        &table_params(cfg)?,
        &cfg.airy()?,
        &cfg.times_or(&[0.0, 1.0, 2.0]),
        cfg.tol,
        1e-12,
    )
    .map_err(CliError::Numeric)?;
    emit_report(cfg, &report, || {
        let mut t = Table::new(&[
            "label",
            "t",
            "mean_x",
            "mean_x2",
            "mean_p",
            "mean_p2",
            "var_x",
            "var_p",
            "product_sq",
            "max_delta",
            "energy",
            "heisenberg_ok",
            "passed",
        ]);
        for e in &report.entries {
            let r = e.numeric.unwrap_or(e.closed_form);
            t.push(vec![
                e.label.clone().into(),
                e.t.into(),
                r.mean_x.into(),
                r.mean_x2.into(),
                r.mean_p.into(),
                r.mean_p2.into(),
                r.var_x.into(),
                r.var_p.into(),
                r.uncertainty_product_sq.into(),
                e.max_delta.map_or(Cell::Text(String::new()), Cell::Num),
                e.energy.into(),
                e.heisenberg_ok.into(),
                e.passed.into(),
            ]);
        }
        t
    })?;
    Ok(Outcome {
        passed: report.passed,
    })
}

pub fn verify(cfg: &RunConfig, corrupt_phase: bool) -> Result<Outcome, CliError> {
    let mut opts = VerifyOptions::new(cfg.params()?);
    opts.oracle_length = cfg.oracle_length;
    opts.oracle_nx = cfg.oracle_nx;
    if corrupt_phase {
        opts.chirp = Chirp::Flipped;
    }
    let report = verify::run(&opts);
    emit_report(cfg, &report, || {
        let mut t = Table::new(&["check", "passed", "measured", "threshold", "detail"]);
        for c in &report.checks {
            t.push(vec![
                c.name.clone().into(),
                c.passed.into(),
                c.measured.into(),
                c.threshold.into(),
                c.detail.clone().into(),
            ]);
        }
        t
    })?;
    Ok(Outcome {
        passed: report.passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(branch_labels(1), vec![0]);
        assert_eq!(branch_labels(2), vec![-1, 1]);
        assert_eq!(branch_labels(3), vec![-1, 0, 1]);
        assert_eq!(branch_labels(4), vec![-2, -1, 1, 2]);
    }

    #[test]
    fn table_always_has_low_rows() {
        let cfg = RunConfig {
            n: 5,
            ..Default::default()
        };
        let ns: Vec<u32> = table_params(&cfg).unwrap().iter().map(|p| p.n()).collect();
        assert_eq!(ns, vec![0, 1, 2, 5]);
        let cfg = RunConfig {
            n: 1,
            ..Default::default()
        };
        assert_eq!(table_params(&cfg).unwrap().len(), 3);
    }
}
