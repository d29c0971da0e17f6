//! Shared fixtures for the criterion benches in `benches/`.

use dqho::{make_hermite_state, GridSpec, StateVector};

/// Normalised mix of the first few Hermite states on an `n`-point grid.
pub fn low_energy_state(n: usize) -> StateVector {
    let grid = GridSpec::new(n).expect("even grid size");
    let mut state = StateVector::zeros(n);
    for level in 0..6 {
        let psi = make_hermite_state(&grid, level, false).amplitudes;
        state.axpy(dqho::C64::new(1.0, 0.2 * level as f64), &psi);
    }
    state.normalized()
}
