//! Recursive symmetric Suzuki product formulas on the discrete oscillator,
//! the exact propagator they approximate, and the `(p, k)` plan rule.

mod plan;
mod schedule;

pub use crate::oscillator::Generator;
pub use plan::{select_plan, TrotterPlan};
pub use schedule::{
    apply_schedule, build_schedule, raw_count, substep, CompiledSchedule, GeneratorSchedule,
    Splitting, MAX_ORDER,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oscillator::{make_hermite_state, HamiltonianKind, ModelHamiltonian};
use crate::state::StateVector;
use crate::C64;

/// `exp(−iHt)·state` through the cached eigendecomposition.
pub fn exact_propagate(h: &ModelHamiltonian, t: f64, state: &StateVector) -> Result<StateVector> {
    if state.len() != h.grid().dim() {
        return Err(Error::invalid(
            "state length does not match the Hamiltonian",
        ));
    }
    if t == 0.0 {
        return Ok(state.clone());
    }
    let ed = h.eigen()?;
    Ok(StateVector::from_vec_unchecked(
        ed.apply_spectral(state.as_slice(), |e| C64::from_polar(1.0, -e * t)),
    ))
}

/// Reference state for level `n`: the discrete Hermite state for the
/// harmonic oscillator, the `n`-th eigenvector otherwise.
pub fn reference_state(h: &ModelHamiltonian, n: usize) -> Result<StateVector> {
    let grid = h.grid();
    if n >= grid.dim() {
        return Err(Error::invalid(format!(
            "level {n} outside a {}-point grid",
            grid.dim()
        )));
    }
    match h.kind() {
        HamiltonianKind::Qho => Ok(make_hermite_state(grid, n, false).amplitudes),
        _ => Ok(h.eigen()?.eigenstate(n)),
    }
}

/// `‖(U_p(s) − U(s))|φ_n⟩‖`.
pub fn trotter_error(h: &ModelHamiltonian, p: usize, s: f64, n: usize) -> Result<f64> {
    Ok(trotter_errors(h, p, s, &[n])?[0])
}

/// [`trotter_error`] over several levels, evaluated in parallel.
pub fn trotter_errors(h: &ModelHamiltonian, p: usize, s: f64, ns: &[usize]) -> Result<Vec<f64>> {
    let schedule = build_schedule(p, s, &Splitting::for_kind(h.kind()))?;
    let compiled = CompiledSchedule::new(&schedule, h.grid());
    if h.kind() != &HamiltonianKind::Qho {
        h.eigen()?;
    }
    ns.par_iter()
        .map(|&n| {
            let phi = reference_state(h, n)?;
            let approx = compiled.apply(&phi, 1)?;
            let exact = exact_propagate(h, s, &phi)?;
            Ok(approx.distance(&exact))
        })
        .collect()
}

/// `‖(U_p(s)^k − U(t))|φ_n⟩‖` for a plan.
pub fn plan_error(h: &ModelHamiltonian, plan: &TrotterPlan, n: usize) -> Result<f64> {
    let schedule = build_schedule(plan.p, plan.s, &Splitting::for_kind(h.kind()))?;
    let phi = reference_state(h, n)?;
    let approx = CompiledSchedule::new(&schedule, h.grid()).apply(&phi, plan.k)?;
    let exact = exact_propagate(h, plan.t, &phi)?;
    Ok(approx.distance(&exact))
}
