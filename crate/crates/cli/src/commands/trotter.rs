use std::f64::consts::FRAC_PI_2;

use clap::Args;
use dqho::trotter::{build_schedule, plan_error, select_plan, trotter_errors, Splitting};
use rayon::prelude::*;

use super::{hamiltonian, sorted, Kind};
use crate::report::{emit_fit_report, num, AtRecord, CliError, FitModel, Table};

#[derive(Debug, Args)]
pub struct ErrorNArgs {
    #[arg(long, value_enum, default_value_t = Kind::Qho)]
    kind: Kind,
    /// Grid size N (even)
    #[arg(long, default_value_t = 200)]
    grid: usize,
    /// Product-formula order p
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Step span s
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// Smallest level n
    #[arg(long, default_value_t = 4)]
    min_level: usize,
    /// Largest level n
    #[arg(long, default_value_t = 50)]
    max_level: usize,
}

/// Columns `n,err` with a power-law fit of the error against n.
pub fn error_n(args: &ErrorNArgs) -> Result<Table, CliError> {
    if args.min_level > args.max_level {
        return Err(CliError::Usage(
            "--min-level must not exceed --max-level".into(),
        ));
    }
    let h = hamiltonian(args.grid, args.kind)?;
    let levels: Vec<usize> = (args.min_level..=args.max_level).collect();
    let errs = trotter_errors(&h, args.order, args.step, &levels)
        .at(|| format!("N={} p={} s={}", args.grid, args.order, args.step))?;
    let sched = build_schedule(args.order, args.step, &Splitting::for_kind(h.kind()))
        .at(|| format!("p={}", args.order))?;
    let mut table = Table::new(&["n", "err"]);
    table.meta(format!(
        "raw_exponentials={} merged_exponentials={}",
        sched.raw_count,
        sched.merged_count()
    ));
    for (n, e) in levels.iter().zip(&errs) {
        table.row(vec![n.to_string(), num(*e)]);
    }
    let xs: Vec<f64> = levels.iter().map(|&n| n as f64).collect();
    table.footer(emit_fit_report(&xs, &errs, FitModel::PowerLaw)?);
    Ok(table)
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Grid sizes N (even)
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    grid: Vec<usize>,
    /// Evolution time t
    #[arg(long, default_value_t = FRAC_PI_2)]
    time: f64,
    /// Target accuracy
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Level as a fraction of N, n = floor(fraction * N)
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
}

/// Columns `N,p,k,err`; the cost model and realised bound go to the footer.
pub fn converge(args: &ConvergeArgs) -> Result<Table, CliError> {
    if !(args.fraction >= 0.0 && args.fraction < 1.0) {
        return Err(CliError::Usage("--fraction must lie in [0, 1)".into()));
    }
    let grids = sorted(&args.grid, "grid")?;
    let rows: Vec<_> = grids
        .par_iter()
        .map(|&n| {
            let level = (args.fraction * n as f64) as usize;
            let record = || format!("N={n} n={level}");
            let plan = select_plan(level, args.time, args.eps).at(record)?;
            let merged = build_schedule(plan.p, plan.s, &Splitting::Qho)
                .at(record)?
                .merged_count();
            let h = hamiltonian(n, Kind::Qho)?;
            let err = plan_error(&h, &plan, level).at(record)?;
            Ok((n, level, plan, merged, err))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["N", "p", "k", "err"]);
    for (n, level, plan, merged, err) in &rows {
        table.row(vec![
            n.to_string(),
            plan.p.to_string(),
            plan.k.to_string(),
            num(*err),
        ]);
        table.note(format!(
            "N={n} n={level} s={} M={} merged_M={} realized_bound={}",
            num(plan.s),
            plan.exponentials,
            plan.k * merged,
            num(plan.realized_bound)
        ));
    }
    Ok(table)
}
