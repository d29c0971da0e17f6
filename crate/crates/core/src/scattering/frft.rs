use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use super::amplitude::{propagate, PropagationMethod};
use crate::error::{Error, Result};
use crate::oscillator::{HamiltonianKind, ModelHamiltonian};
use crate::state::StateVector;
use crate::C64;

/// Discrete fractional Fourier transform of order `a`:
/// `e^{iaπ/4} · U^d(aπ/2) · signal`, so that `a = 1` approximates the
/// centered DFT and the `n`-th Hermite state picks up `e^{−inaπ/2}`.
pub fn frft_apply(
    h: &ModelHamiltonian,
    signal: &StateVector,
    a: f64,
    method: PropagationMethod,
) -> Result<StateVector> {
    if h.kind() != &HamiltonianKind::Qho {
        return Err(Error::invalid(
            "the fractional Fourier transform uses the harmonic oscillator",
        ));
    }
    if !a.is_finite() {
        return Err(Error::invalid("order a must be finite"));
    }
    if signal.len() != h.grid().dim() {
        return Err(Error::invalid("signal length does not match the grid"));
    }
    if a == 0.0 {
        return Ok(signal.clone());
    }
    let out = propagate(h, a * FRAC_PI_2, signal, method)?;
    Ok(out.scaled(C64::from_polar(1.0, a * FRAC_PI_2 / 2.0)))
}

/// Reads a `re,im` CSV, one row per grid point in site order. A header row
/// is optional.
pub fn read_signal(path: &Path) -> Result<StateVector> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut amps = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::invalid(format!(
                "row {row}: expected 2 columns, got {}",
                record.len()
            )));
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => amps.push(C64::new(v[0], v[1])),
            Err(_) if row == 0 => continue,
            Err(e) => return Err(Error::invalid(format!("row {row}: {e}"))),
        }
    }
    StateVector::new(amps)
}

pub fn write_signal(path: &Path, signal: &StateVector) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["re", "im"])?;
    for z in signal.as_slice() {
        w.write_record([format!("{:.16e}", z.re), format!("{:.16e}", z.im)])?;
    }
    w.flush()?;
    Ok(())
}
