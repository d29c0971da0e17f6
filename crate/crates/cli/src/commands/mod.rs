//! Subcommand definitions. Each `run` returns the finished table; nothing
//! touches the filesystem until every record has been computed.

mod prep;
mod scattering;
mod sp2;
mod spectrum;
mod trotter;

use clap::{Subcommand, ValueEnum};
use dqho::{build_hamiltonian, GridSpec, HamiltonianKind, ModelHamiltonian};

use crate::report::{AtRecord, CliError, Table};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discrete eigenvalues E_n next to their reference values
    Spectrum(spectrum::SpectrumArgs),
    /// |<phi_m|psi_n>| between eigenvectors and discrete Hermite states
    OverlapMatrix(spectrum::OverlapArgs),
    /// Eigenvalue error at a fixed level ratio as N grows
    EigErrorScan(spectrum::EigErrorArgs),
    /// One-step product-formula error against the level n
    TrotterErrorN(trotter::ErrorNArgs),
    /// Planned (p, k) and the resulting error for each grid size
    TrotterConverge(trotter::ConvergeArgs),
    /// Gaussian ground-state preparation error against delta
    PrepGround(prep::PrepGroundArgs),
    /// Jaynes-Cummings eigenstate ladder fidelities
    JcLadder(prep::JcLadderArgs),
    /// Largest n whose quartic eigenvalues agree with a reference grid
    QuarticTable(spectrum::QuarticTableArgs),
    /// Scattering amplitudes: continuum, discrete and Hadamard-test values
    Amplitude(scattering::AmplitudeArgs),
    /// Fractional Fourier transform of a re,im signal file
    Frft(scattering::FrftArgs),
    /// Coefficients of the sp(2) defect polynomial
    Sp2Defect(sp2::Sp2DefectArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::OverlapMatrix(_) => "overlap-matrix",
            Command::EigErrorScan(_) => "eig-error-scan",
            Command::TrotterErrorN(_) => "trotter-error-n",
            Command::TrotterConverge(_) => "trotter-converge",
            Command::PrepGround(_) => "prep-ground",
            Command::JcLadder(_) => "jc-ladder",
            Command::QuarticTable(_) => "quartic-table",
            Command::Amplitude(_) => "amplitude",
            Command::Frft(_) => "frft",
            Command::Sp2Defect(_) => "sp2-defect",
        }
    }

    pub fn run(&self, seed: u64) -> Result<Table, CliError> {
        match self {
            Command::Spectrum(a) => spectrum::spectrum(a),
            Command::OverlapMatrix(a) => spectrum::overlap(a),
            Command::EigErrorScan(a) => spectrum::eig_error_scan(a),
            Command::TrotterErrorN(a) => trotter::error_n(a),
            Command::TrotterConverge(a) => trotter::converge(a),
            Command::PrepGround(a) => prep::prep_ground(a),
            Command::JcLadder(a) => prep::jc_ladder(a),
            Command::QuarticTable(a) => spectrum::quartic_table(a),
            Command::Amplitude(a) => scattering::amplitude(a, seed),
            Command::Frft(a) => scattering::frft(a),
            Command::Sp2Defect(a) => sp2::sp2_defect(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// V(x) = x²/2
    Qho,
    /// V(x) = x⁴/2
    Quartic,
}

impl Kind {
    fn model(self) -> HamiltonianKind {
        match self {
            Kind::Qho => HamiltonianKind::Qho,
            Kind::Quartic => HamiltonianKind::Quartic,
        }
    }
}

fn grid(n: usize) -> Result<GridSpec, CliError> {
    GridSpec::new(n).at(|| format!("N={n}"))
}

fn hamiltonian(n: usize, kind: Kind) -> Result<ModelHamiltonian, CliError> {
    build_hamiltonian(&grid(n)?, kind.model()).at(|| format!("N={n}"))
}

/// Sorted, deduplicated copy of a non-empty list flag.
fn sorted<T: PartialOrd + Copy>(values: &[T], flag: &str) -> Result<Vec<T>, CliError> {
    if values.is_empty() {
        return Err(CliError::Usage(format!(
            "--{flag} needs at least one value"
        )));
    }
    if values.iter().any(|v| v.partial_cmp(v).is_none()) {
        return Err(CliError::Usage(format!("--{flag} contains NaN")));
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| a == b);
    Ok(v)
}
