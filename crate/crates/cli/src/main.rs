//! `dqho`: command-line experiments on the discrete harmonic oscillator.
//!
//! Every subcommand writes one CSV file: `#` metadata lines, a header row,
//! the records sorted by their input keys, then optional `#` footer lines.

mod commands;
mod config;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser};

use commands::Command;
use report::CliError;

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "DQHO_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "dqho",
    version,
    about = "Experiments on the discrete quantum harmonic oscillator"
)]
struct Cli {
    /// Output CSV path [default: $DQHO_OUT_DIR/<subcommand>.csv, or the
    /// current directory when the variable is unset]
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// File of key=value lines naming long flags; command-line flags take
    /// precedence and unknown keys are rejected
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for sampled estimates
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads [default: available cores]
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

fn parse(argv: Vec<OsString>) -> Result<Cli, ExitCode> {
    let root = Cli::command();
    let report = |e: clap::Error| {
        let _ = e.print();
        if e.use_stderr() {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    };
    let matches = root.clone().try_get_matches_from(&argv).map_err(report)?;
    let Some(path) = matches.get_one::<PathBuf>("config") else {
        return Cli::from_arg_matches(&matches).map_err(report);
    };
    let merged = config::load_config(path)
        .and_then(|pairs| config::merge_into_args(&root, &matches, &pairs, argv))
        .map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        })?;
    let matches = root.try_get_matches_from(merged).map_err(report)?;
    Cli::from_arg_matches(&matches).map_err(report)
}

fn output_path(cli: &Cli) -> PathBuf {
    if let Some(out) = &cli.out {
        return out.clone();
    }
    let dir = std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_default();
    dir.join(format!("{}.csv", cli.command.name()))
}

fn run(cli: &Cli) -> Result<PathBuf, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    let mut table = cli.command.run(cli.seed)?;
    table.preamble([
        format!("command={}", cli.command.name()),
        format!("seed={}", cli.seed),
        format!("config={:?}", cli.command),
    ]);
    let path = output_path(cli);
    std::fs::write(&path, table.render()).map_err(|e| {
        let _ = std::fs::remove_file(&path);
        CliError::Usage(format!("cannot write {}: {e}", path.display()))
    })?;
    Ok(path)
}

fn main() -> ExitCode {
    let cli = match parse(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    match run(&cli) {
        Ok(path) => {
            eprintln!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
