use clap::{Args, ValueEnum};
use dqho::prep::{
    jc_build, ladder_prepare, prepare_ground, prepare_ground_with, FreeEvolutionSign, LadderMode,
    DEFAULT_STEP_CONSTANT,
};
use rayon::prelude::*;

use super::{grid, sorted};
use crate::report::{emit_fit_report, num, AtRecord, CliError, FitModel, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    /// exp(+i p² t), which reaches the ground state
    Plus,
    /// exp(−i p² t)
    Minus,
}

#[derive(Debug, Args)]
pub struct PrepGroundArgs {
    /// Grid size N (even)
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Gaussian widths delta (in grid sites squared)
    #[arg(long, value_delimiter = ',', default_value = "4,8,12,16,20")]
    delta: Vec<f64>,
    /// Sign of the free-evolution exponent
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    sign: Sign,
}

/// Columns `delta,err` with a log-linear fit of the error against delta.
pub fn prep_ground(args: &PrepGroundArgs) -> Result<Table, CliError> {
    let g = grid(args.grid)?;
    let deltas = sorted(&args.delta, "delta")?;
    let sign = match args.sign {
        Sign::Plus => FreeEvolutionSign::Plus,
        Sign::Minus => FreeEvolutionSign::Minus,
    };
    let runs: Vec<_> = deltas
        .iter()
        .map(|&d| prepare_ground_with(&g, d, sign).at(|| format!("N={} delta={d}", args.grid)))
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["delta", "err"]);
    for r in &runs {
        table.row(vec![num(r.params.delta), num(r.error)]);
        table.meta(format!(
            "delta={} sigma_sq={} t={} t_prime={} alpha={}",
            num(r.params.delta),
            num(r.params.sigma_sq),
            num(r.params.t),
            num(r.params.t_prime),
            num(r.params.alpha)
        ));
    }
    if runs.len() >= 3 {
        let ys: Vec<f64> = runs.iter().map(|r| r.error).collect();
        table.footer(emit_fit_report(&deltas, &ys, FitModel::LogLinear)?);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    Exact,
    Trotter,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Start {
    /// Ground eigenvector of the discrete oscillator
    Eigen,
    /// Output of the Gaussian ground-state preparation
    Prepared,
}

#[derive(Debug, Args)]
pub struct JcLadderArgs {
    /// Grid size N (even)
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Target levels
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    target: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ModeChoice::Both)]
    mode: ModeChoice,
    /// Accuracy for the split rungs
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Constant C in m = ceil(C n_target / eps) steps per rung
    #[arg(long, default_value_t = DEFAULT_STEP_CONSTANT)]
    step_constant: f64,
    #[arg(long, value_enum, default_value_t = Start::Eigen)]
    start: Start,
    /// Gaussian width for --start prepared
    #[arg(long, default_value_t = 16.0)]
    delta: f64,
}

/// Columns `n_target,mode,m,fidelity`; `m` is zero for exact rungs.
pub fn jc_ladder(args: &JcLadderArgs) -> Result<Table, CliError> {
    let g = grid(args.grid)?;
    let targets = sorted(&args.target, "target")?;
    let system = jc_build(&g).at(|| format!("N={}", args.grid))?;
    let start = match args.start {
        Start::Eigen => None,
        Start::Prepared => {
            Some(prepare_ground(&g, args.delta).at(|| format!("delta={}", args.delta))?)
        }
    };
    let mut modes = Vec::new();
    if args.mode != ModeChoice::Trotter {
        modes.push(("exact", LadderMode::Exact));
    }
    if args.mode != ModeChoice::Exact {
        modes.push((
            "trotter",
            LadderMode::Trotter {
                eps: args.eps,
                step_constant: args.step_constant,
            },
        ));
    }
    let jobs: Vec<(usize, &str, LadderMode)> = targets
        .iter()
        .flat_map(|&n| modes.iter().map(move |&(name, m)| (n, name, m)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(n, name, mode)| {
            ladder_prepare(&system, n, mode, start.as_ref().map(|p| &p.state))
                .at(|| format!("n_target={n} mode={name}"))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["n_target", "mode", "m", "fidelity"]);
    if let Some(p) = &start {
        table.meta(format!(
            "start=prepared delta={} prep_err={}",
            args.delta,
            num(p.error)
        ));
    }
    for ((n, name, _), r) in jobs.iter().zip(&results) {
        table.row(vec![
            n.to_string(),
            name.to_string(),
            r.steps_per_rung.to_string(),
            num(r.fidelity),
        ]);
    }
    Ok(table)
}
