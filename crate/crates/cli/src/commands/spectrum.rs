use clap::Args;
use dqho::oscillator::{eigenvalue_threshold, overlap_matrix};
use rayon::prelude::*;

use super::{hamiltonian, sorted, Kind};
use crate::report::{emit_fit_report, num, AtRecord, CliError, FitModel, Table};

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Grid sizes N (even)
    #[arg(long, value_delimiter = ',', default_value = "400")]
    grid: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Kind::Qho)]
    kind: Kind,
    /// Highest level reported [default: N/2]
    #[arg(long)]
    max_level: Option<usize>,
    /// Reference grid for the quartic oscillator, whose exact spectrum is unknown
    #[arg(long, default_value_t = 1024)]
    reference: usize,
}

/// Columns `N,n,E_n,ref`; the reference is `n + 1/2` for the harmonic
/// oscillator and the eigenvalue on the reference grid otherwise.
pub fn spectrum(args: &SpectrumArgs) -> Result<Table, CliError> {
    let grids = sorted(&args.grid, "grid")?;
    let reference = match args.kind {
        Kind::Qho => None,
        Kind::Quartic => Some(
            hamiltonian(args.reference, args.kind)?
                .eigenvalues()
                .at(|| format!("reference N={}", args.reference))?,
        ),
    };
    let spectra: Vec<(Vec<f64>, f64)> = grids
        .par_iter()
        .map(|&n| {
            let h = hamiltonian(n, args.kind)?;
            Ok((
                h.eigenvalues().at(|| format!("N={n}"))?,
                h.symmetrization_deviation(),
            ))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["N", "n", "E_n", "ref"]);
    for (&n, (values, deviation)) in grids.iter().zip(&spectra) {
        let top = args.max_level.unwrap_or(n / 2);
        if top >= n {
            return Err(CliError::Usage(format!(
                "--max-level {top} must be below N={n}"
            )));
        }
        table.meta(format!(
            "N={n} symmetrization_deviation={}",
            num(*deviation)
        ));
        for (level, &e) in values.iter().enumerate().take(top + 1) {
            let r = match &reference {
                None => level as f64 + 0.5,
                Some(r) => *r.get(level).ok_or_else(|| {
                    CliError::Usage(format!(
                        "level {level} exceeds the reference grid {}",
                        args.reference
                    ))
                })?,
            };
            table.row(vec![n.to_string(), level.to_string(), num(e), num(r)]);
        }
    }
    Ok(table)
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    /// Grid size N (even)
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Highest level m, n in the matrix [default: N/2]
    #[arg(long)]
    max_level: Option<usize>,
}

pub fn overlap(args: &OverlapArgs) -> Result<Table, CliError> {
    let h = hamiltonian(args.grid, Kind::Qho)?;
    let top = args.max_level.unwrap_or(args.grid / 2);
    let m = overlap_matrix(&h, top).at(|| format!("N={} max_level={top}", args.grid))?;
    let mut table = Table::new(&["m", "n", "abs_overlap"]);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            table.row(vec![i.to_string(), j.to_string(), num(*v)]);
        }
    }
    Ok(table)
}

#[derive(Debug, Args)]
pub struct EigErrorArgs {
    /// Grid sizes N (even)
    #[arg(long, value_delimiter = ',', default_value = "32,48,64,80,96")]
    grid: Vec<usize>,
    /// Level as a fraction of N, n = round(fraction * N)
    #[arg(long, default_value_t = 0.5, conflicts_with = "level")]
    fraction: f64,
    /// Fixed level n for every grid
    #[arg(long)]
    level: Option<usize>,
}

/// Columns `N,n,log_abs_err` with a log-linear fit of the error against N.
pub fn eig_error_scan(args: &EigErrorArgs) -> Result<Table, CliError> {
    if !(args.fraction > 0.0 && args.fraction < 1.0) {
        return Err(CliError::Usage("--fraction must lie in (0, 1)".into()));
    }
    let grids = sorted(&args.grid, "grid")?;
    let rows: Vec<(usize, usize, f64)> = grids
        .par_iter()
        .map(|&n| {
            let level = args
                .level
                .unwrap_or((args.fraction * n as f64).round() as usize);
            if level >= n {
                return Err(CliError::Usage(format!(
                    "level {level} must be below N={n}"
                )));
            }
            let values = hamiltonian(n, Kind::Qho)?
                .eigenvalues()
                .at(|| format!("N={n}"))?;
            Ok((n, level, (values[level] - (level as f64 + 0.5)).abs()))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["N", "n", "log_abs_err"]);
    for &(n, level, err) in &rows {
        table.row(vec![n.to_string(), level.to_string(), num(err.ln())]);
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.2).collect();
    table.footer(emit_fit_report(&xs, &ys, FitModel::LogLinear)?);
    Ok(table)
}

#[derive(Debug, Args)]
pub struct QuarticTableArgs {
    /// Grid sizes N (even)
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    grid: Vec<usize>,
    /// Reference grid size; thresholds depend on it
    #[arg(long, default_value_t = 1024)]
    reference: usize,
    /// Agreement tolerances
    #[arg(long, value_delimiter = ',', default_value = "1e-5")]
    eps: Vec<f64>,
}

/// Columns `N,threshold_eps,n_max,ratio`, where `n_max` is the largest n
/// such that every level up to n agrees with the reference within eps.
pub fn quartic_table(args: &QuarticTableArgs) -> Result<Table, CliError> {
    let grids = sorted(&args.grid, "grid")?;
    let tolerances = sorted(&args.eps, "eps")?;
    if let Some(&n) = grids.iter().find(|&&n| n >= args.reference) {
        return Err(CliError::Usage(format!(
            "grid {n} must be smaller than the reference {}",
            args.reference
        )));
    }
    let reference = hamiltonian(args.reference, Kind::Quartic)?
        .eigenvalues()
        .at(|| format!("reference N={}", args.reference))?;
    let spectra: Vec<Vec<f64>> = grids
        .par_iter()
        .map(|&n| {
            hamiltonian(n, Kind::Quartic)?
                .eigenvalues()
                .at(|| format!("N={n}"))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["N", "threshold_eps", "n_max", "ratio"]);
    table.meta(format!("reference_N={}", args.reference));
    for (&n, values) in grids.iter().zip(&spectra) {
        for &eps in &tolerances {
            let n_max = eigenvalue_threshold(values, &reference, eps).ok_or_else(|| {
                CliError::Numerical {
                    record: format!("N={n} eps={eps:e}"),
                    source: dqho::Error::InvalidArgument(
                        "even the ground level misses the tolerance".into(),
                    ),
                }
            })?;
            table.row(vec![
                n.to_string(),
                num(eps),
                n_max.to_string(),
                num(n_max as f64 / n as f64),
            ]);
        }
    }
    Ok(table)
}
