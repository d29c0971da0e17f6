use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use dqho::scattering::{
    cv_amplitude, cv_position_amplitude, discrete_amplitude, frft_apply, hadamard_test, propagate,
    read_signal, spectral_state, FinalState, PropagationMethod, Sampling, SpectralCoefficients,
    StatePreparation,
};
use dqho::trotter::select_plan;
use dqho::{StateVector, C64};

use super::{hamiltonian, sorted, Kind};
use crate::report::{num, AtRecord, CliError, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Spectral propagator from the eigendecomposition
    Exact,
    /// Product formula with (p, k) from the plan rule
    Plan,
}

fn method(choice: Method, level: usize, t: f64, eps: f64) -> dqho::Result<PropagationMethod> {
    Ok(match choice {
        Method::Exact => PropagationMethod::Exact,
        Method::Plan if t == 0.0 => PropagationMethod::Exact,
        Method::Plan => PropagationMethod::Plan(select_plan(level, t.abs(), eps)?),
    })
}

fn coefficients(values: &[f64], flag: &str) -> Result<SpectralCoefficients, CliError> {
    SpectralCoefficients::normalized(values.iter().map(|&v| C64::new(v, 0.0)).collect())
        .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

#[derive(Debug, Args)]
pub struct AmplitudeArgs {
    /// Grid size N (even)
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// Real coefficients c_0, c_1, ... of the initial state (normalised)
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "1"
    )]
    coeffs: Vec<f64>,
    /// Coefficients of the final state [default: same as --coeffs]
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    final_coeffs: Option<Vec<f64>>,
    /// Project onto the grid site j instead of a spectral final state
    #[arg(long, allow_hyphen_values = true, conflicts_with = "final_coeffs")]
    site: Option<i64>,
    /// Evolution times t
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0.7,1.5707963267948966,3"
    )]
    time: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Target accuracy for --method plan
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Shots for the sampled Hadamard test [default: exact probabilities]
    #[arg(long)]
    shots: Option<u64>,
}

/// Columns `t,re_cv,im_cv,re_discrete,im_discrete,abs_err,re_hadamard,im_hadamard`.
pub fn amplitude(args: &AmplitudeArgs, seed: u64) -> Result<Table, CliError> {
    let h = hamiltonian(args.grid, Kind::Qho)?;
    let g = h.grid();
    let c = coefficients(&args.coeffs, "coeffs")?;
    let c_final = coefficients(
        args.final_coeffs.as_deref().unwrap_or(&args.coeffs),
        "final-coeffs",
    )?;
    let times = sorted(&args.time, "time")?;
    let final_state = args.site.map_or(FinalState::Spectral, FinalState::Position);
    let (phi, norm) = spectral_state(g, &c);
    let target = match args.site {
        Some(j) => {
            let i = g.index_of(j).ok_or_else(|| {
                CliError::Usage(format!("--site {j} is off the {}-point grid", args.grid))
            })?;
            StateVector::basis(g.dim(), i)
        }
        None => spectral_state(g, &c_final).0,
    };
    let prep = StatePreparation::new(&phi).at(|| "initial state".into())?;
    let prep_final = StatePreparation::new(&target).at(|| "final state".into())?;
    let level = c.n_prime().max(c_final.n_prime());
    let sampling = args.shots.map(|shots| Sampling { shots, seed });

    let mut table = Table::new(&[
        "t",
        "re_cv",
        "im_cv",
        "re_discrete",
        "im_discrete",
        "abs_err",
        "re_hadamard",
        "im_hadamard",
    ]);
    table.meta(format!("initial_norm_deviation={}", num(norm - 1.0)));
    for &t in &times {
        let record = || format!("t={t}");
        let how = method(args.method, level, t, args.eps).at(record)?;
        let cv = match args.site {
            Some(j) => cv_position_amplitude(g, &c, t, j),
            None => cv_amplitude(&c, &c_final, t).at(record)?,
        };
        let disc = discrete_amplitude(&h, &c, &c_final, t, how, final_state).at(record)?;
        let v =
            |s: &StateVector| Ok(prep_final.apply_adjoint(&propagate(&h, t, &prep.apply(s), how)?));
        let had = hadamard_test(g.dim(), &v, sampling).at(record)?;
        if let PropagationMethod::Plan(plan) = how {
            table.note(format!(
                "t={} p={} k={} M={}",
                num(t),
                plan.p,
                plan.k,
                plan.exponentials
            ));
        }
        table.row(vec![
            num(t),
            num(cv.re),
            num(cv.im),
            num(disc.re),
            num(disc.im),
            num((cv - disc).norm()),
            num(had.re),
            num(had.im),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Args)]
pub struct FrftArgs {
    /// Signal file: re,im per grid point, sites -N/2 .. N/2-1
    #[arg(long)]
    input: PathBuf,
    /// Order a; a = 1 is one quarter rotation
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    order: f64,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Target accuracy for --method plan
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Level assumed by the plan rule [default: N/4]
    #[arg(long)]
    plan_level: Option<usize>,
}

/// Columns `re,im`, readable again as an input signal.
pub fn frft(args: &FrftArgs) -> Result<Table, CliError> {
    let signal = read_signal(&args.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    let n = signal.len();
    let h = hamiltonian(n, Kind::Qho)?;
    let level = args.plan_level.unwrap_or(n / 4);
    let record = || format!("N={n} a={}", args.order);
    let how = method(args.method, level, args.order * FRAC_PI_2, args.eps).at(record)?;
    let out = frft_apply(&h, &signal, args.order, how).at(record)?;
    let mut table = Table::new(&["re", "im"]);
    if let PropagationMethod::Plan(plan) = how {
        table.meta(format!("p={} k={} M={}", plan.p, plan.k, plan.exponentials));
    }
    for z in out.as_slice() {
        table.row(vec![num(z.re), num(z.im)]);
    }
    Ok(table)
}
