//! Ground-state preparation from a narrow discrete Gaussian.
//!
//! The start state `a_j ∝ exp(−j²/(2δ))` has position variance `σ² = πδ/N`
//! (in units where the ground state has variance ½). A free evolution
//! `exp(+i p² t)` spreads it to variance ½ and the chirp `exp(+i x² t′)`
//! removes the quadratic phase the spreading leaves behind, with
//! `t = sqrt(σ²(2 − 4σ²))/2` and `t′ = 1/(4t + 4σ⁴/t)`.

use crate::error::{Error, Result};
use crate::oscillator::{apply_quadratic_phase, make_hermite_state, Generator, GridSpec};
use crate::state::StateVector;
use crate::C64;

/// Parameters of one preparation run; `alpha` is the global phase removed
/// from the output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPrepParams {
    pub delta: f64,
    pub sigma_sq: f64,
    pub t: f64,
    pub t_prime: f64,
    pub alpha: f64,
}

impl GaussianPrepParams {
    pub fn new(grid: &GridSpec, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid(format!(
                "delta must be positive, got {delta}"
            )));
        }
        let sigma_sq = std::f64::consts::PI * delta / grid.dim() as f64;
        if sigma_sq >= 0.5 {
            return Err(Error::invalid(format!(
                "sigma² = πδ/N = {sigma_sq} must stay below 1/2"
            )));
        }
        let t = (sigma_sq * (2.0 - 4.0 * sigma_sq)).sqrt() / 2.0;
        let t_prime = 1.0 / (4.0 * t + 4.0 * sigma_sq * sigma_sq / t);
        Ok(Self {
            delta,
            sigma_sq,
            t,
            t_prime,
            alpha: 0.0,
        })
    }
}

/// Sign of the free-evolution exponent `exp(±i p² t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FreeEvolutionSign {
    /// `exp(+i p² t)`, the sign that reaches the ground state.
    #[default]
    Plus,
    /// `exp(−i p² t)`, which doubles the chirp instead of cancelling it.
    Minus,
}

#[derive(Debug, Clone)]
pub struct GroundPrep {
    /// Prepared state with the global phase `e^{−iα}` already removed.
    pub state: StateVector,
    /// `‖|ψ_0^d⟩ − e^{−iα}·result‖`.
    pub error: f64,
    pub params: GaussianPrepParams,
}

/// `exp(−j²/(2δ))/√κ` on the sites `j = −N/2 … N/2−1`.
pub fn gaussian_state(grid: &GridSpec, delta: f64) -> Result<StateVector> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let amps: Vec<C64> = (0..grid.dim())
        .map(|i| {
            let j = grid.site(i) as f64;
            C64::new((-j * j / (2.0 * delta)).exp(), 0.0)
        })
        .collect();
    Ok(StateVector::from_vec_unchecked(amps).normalized())
}

/// Gaussian restricted to `|j| ≤ j₀ = ⌈sqrt(2δ ln(1/ε))⌉` and renormalised.
pub fn truncated_gaussian_prep(grid: &GridSpec, delta: f64, eps: f64) -> Result<StateVector> {
    let j0 = truncation_radius(delta, eps)?;
    let mut s = gaussian_state(grid, delta)?;
    for i in 0..grid.dim() {
        if grid.site(i).unsigned_abs() > j0 as u64 {
            s[i] = C64::new(0.0, 0.0);
        }
    }
    Ok(s.normalized())
}

pub fn truncation_radius(delta: f64, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid(format!(
            "delta must be positive, got {delta}"
        )));
    }
    Ok((2.0 * delta * (1.0 / eps).ln()).sqrt().ceil() as usize)
}

pub fn prepare_ground(grid: &GridSpec, delta: f64) -> Result<GroundPrep> {
    prepare_ground_with(grid, delta, FreeEvolutionSign::Plus)
}

pub fn prepare_ground_with(
    grid: &GridSpec,
    delta: f64,
    sign: FreeEvolutionSign,
) -> Result<GroundPrep> {
    let params = GaussianPrepParams::new(grid, delta)?;
    let t = match sign {
        FreeEvolutionSign::Plus => params.t,
        FreeEvolutionSign::Minus => -params.t,
    };
    let start = gaussian_state(grid, delta)?;
    // exp(−iθG) with θ = −t gives exp(+i p² t).
    let free = apply_quadratic_phase(grid, &start, &Generator::P2, -t)?;
    let chirped = apply_quadratic_phase(grid, &free, &Generator::X2, -params.t_prime)?;
    finish(grid, chirped, params)
}

/// Phase-fixes `result` against `|ψ_0^d⟩` and measures the distance.
fn finish(
    grid: &GridSpec,
    result: StateVector,
    mut params: GaussianPrepParams,
) -> Result<GroundPrep> {
    let target = make_hermite_state(grid, 0, false).amplitudes;
    let overlap = target.inner(&result);
    params.alpha = overlap.arg();
    let state = result.scaled(C64::from_polar(1.0, -params.alpha));
    let error = target.distance(&state);
    Ok(GroundPrep {
        state,
        error,
        params,
    })
}

/// Error of the Gaussian itself, i.e. the sequence with `t = t′ = 0`.
pub fn unevolved_error(grid: &GridSpec, delta: f64) -> Result<f64> {
    let params = GaussianPrepParams::new(grid, delta)?;
    Ok(finish(grid, gaussian_state(grid, delta)?, params)?.error)
}
