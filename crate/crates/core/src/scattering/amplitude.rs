use crate::error::{Error, Result};
use crate::oscillator::{
    hermite_eval, hermite_states, GridSpec, HamiltonianKind, ModelHamiltonian,
};
use crate::state::StateVector;
use crate::trotter::{build_schedule, exact_propagate, CompiledSchedule, Splitting, TrotterPlan};
use crate::C64;

/// Default low-energy fraction `c`: spectral states may use `n ≤ c·N`.
pub const DEFAULT_LOW_ENERGY_FRACTION: f64 = 0.5;

/// Unit-norm coefficients `c_0 … c_{N′}` over the oscillator eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    coeffs: Vec<C64>,
}

impl SpectralCoefficients {
    /// Accepts coefficients whose squared norm is 1 within `1e-12`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if coeffs.is_empty() || (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "spectral coefficients must have unit norm, got Σ|c|² = {norm_sq}"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Rescales arbitrary nonzero coefficients to unit norm.
    pub fn normalized(coeffs: Vec<C64>) -> Result<Self> {
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid(
                "spectral coefficients must be nonzero and finite",
            ));
        }
        Ok(Self {
            coeffs: coeffs.into_iter().map(|c| c / norm).collect(),
        })
    }

    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Highest level `N′`.
    pub fn n_prime(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `Σ_n (c′_n)^* c_n e^{−i(n+½)t}`.
pub fn cv_amplitude(
    c: &SpectralCoefficients,
    c_prime: &SpectralCoefficients,
    t: f64,
) -> Result<C64> {
    if c.coeffs.len() != c_prime.coeffs.len() {
        return Err(Error::invalid(
            "initial and final coefficient lists differ in length",
        ));
    }
    Ok(c.coeffs
        .iter()
        .zip(&c_prime.coeffs)
        .enumerate()
        .map(|(n, (a, b))| b.conj() * a * C64::from_polar(1.0, -(n as f64 + 0.5) * t))
        .sum())
}

/// `(2π/N)^{1/4} ⟨x_j|U(t)|φ⟩ = (2π/N)^{1/4} Σ_n c_n e^{−i(n+½)t} ψ_n(x_j)`.
pub fn cv_position_amplitude(grid: &GridSpec, c: &SpectralCoefficients, t: f64, j: i64) -> C64 {
    let x = j as f64 * grid.spacing();
    let sum: C64 = c
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, a)| a * hermite_eval(n, x) * C64::from_polar(1.0, -(n as f64 + 0.5) * t))
        .sum();
    sum * grid.amplitude_prefactor()
}

/// `|φ^d⟩ ∝ Σ c_n |ψ_n^d⟩`, renormalised. The second value is the norm
/// before renormalisation, whose distance from 1 is exponentially small.
pub fn spectral_state(grid: &GridSpec, c: &SpectralCoefficients) -> (StateVector, f64) {
    let psi = hermite_states(grid, c.n_prime());
    let mut s = StateVector::zeros(grid.dim());
    for (a, p) in c.coeffs.iter().zip(&psi) {
        s.axpy(*a, p);
    }
    let norm = s.normalize();
    (s, norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropagationMethod {
    Exact,
    Plan(TrotterPlan),
}

/// `U^d(t)·state` either exactly or with `k` repetitions of `U_p(±s)`.
pub fn propagate(
    h: &ModelHamiltonian,
    t: f64,
    state: &StateVector,
    method: PropagationMethod,
) -> Result<StateVector> {
    match method {
        PropagationMethod::Exact => exact_propagate(h, t, state),
        PropagationMethod::Plan(plan) => {
            let s = plan.s * t.signum();
            let schedule = build_schedule(plan.p, s, &Splitting::for_kind(h.kind()))?;
            CompiledSchedule::new(&schedule, h.grid()).apply(state, plan.k)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalState {
    /// Project onto the normalised `Σ c′_n |ψ_n^d⟩`.
    Spectral,
    /// Project onto the grid basis state `|j⟩` (signed site label).
    Position(i64),
}

/// `⟨φ′^d| U^d(t) |φ^d⟩` on the discrete harmonic oscillator.
pub fn discrete_amplitude(
    h: &ModelHamiltonian,
    c: &SpectralCoefficients,
    c_prime: &SpectralCoefficients,
    t: f64,
    method: PropagationMethod,
    final_state: FinalState,
) -> Result<C64> {
    if h.kind() != &HamiltonianKind::Qho {
        return Err(Error::invalid(
            "spectral amplitudes are defined for the harmonic oscillator",
        ));
    }
    let grid = h.grid();
    let limit = grid.low_energy_cutoff(DEFAULT_LOW_ENERGY_FRACTION);
    if c.n_prime() > limit || c_prime.n_prime() > limit {
        return Err(Error::invalid(format!(
            "N′ must not exceed {limit} for N = {}",
            grid.dim()
        )));
    }
    let (phi, _) = spectral_state(grid, c);
    let evolved = propagate(h, t, &phi, method)?;
    match final_state {
        FinalState::Spectral => Ok(spectral_state(grid, c_prime).0.inner(&evolved)),
        FinalState::Position(j) => {
            let i = grid
                .index_of(j)
                .ok_or_else(|| Error::invalid(format!("site {j} is off the grid")))?;
            Ok(evolved[i])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::build_hamiltonian;
    use crate::trotter::select_plan;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spread(n_prime: usize) -> SpectralCoefficients {
        SpectralCoefficients::normalized(
            (0..=n_prime)
                .map(|n| C64::new(1.0 / (n as f64 + 1.0), 0.3 * n as f64 - 0.5))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cv_amplitude_values() {
        let d0 = SpectralCoefficients::basis(0);
        let a = cv_amplitude(&d0, &d0, 1.1).unwrap();
        assert!((a - C64::from_polar(1.0, -0.55)).norm() < 1e-15);
        let c = spread(5);
        assert!((cv_amplitude(&c, &c, 0.0).unwrap() - 1.0).norm() < 1e-14);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let half = SpectralCoefficients::new(vec![C64::new(r, 0.0), C64::new(r, 0.0)]).unwrap();
        assert!(cv_amplitude(&half, &half, PI).unwrap().norm() < 1e-15);
        assert!(SpectralCoefficients::new(vec![C64::new(2.0, 0.0)]).is_err());
    }

    #[test]
    fn discrete_matches_cv() {
        let g = GridSpec::new(128).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Qho).unwrap();
        let d0 = SpectralCoefficients::basis(0);
        let a = discrete_amplitude(
            &h,
            &d0,
            &d0,
            1.3,
            PropagationMethod::Exact,
            FinalState::Spectral,
        )
        .unwrap();
        assert!((a - C64::from_polar(1.0, -0.65)).norm() < 1e-8);
        let c = spread(8);
        let cp =
            SpectralCoefficients::normalized(c.coeffs().iter().rev().copied().collect()).unwrap();
        let cv = cv_amplitude(&c, &cp, FRAC_PI_2).unwrap();
        let ex = discrete_amplitude(
            &h,
            &c,
            &cp,
            FRAC_PI_2,
            PropagationMethod::Exact,
            FinalState::Spectral,
        )
        .unwrap();
        assert!((ex - cv).norm() < 1e-8);
        let plan = select_plan(8, FRAC_PI_2, 1e-3).unwrap();
        let tr = discrete_amplitude(
            &h,
            &c,
            &cp,
            FRAC_PI_2,
            PropagationMethod::Plan(plan),
            FinalState::Spectral,
        )
        .unwrap();
        assert!((tr - cv).norm() < 1e-3);
    }

    #[test]
    fn position_amplitude() {
        let g = GridSpec::new(256).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Qho).unwrap();
        let c = spread(8);
        for j in [-10, 0, 3, 17] {
            let d = discrete_amplitude(
                &h,
                &c,
                &c,
                0.9,
                PropagationMethod::Exact,
                FinalState::Position(j),
            )
            .unwrap();
            let cv = cv_position_amplitude(&g, &c, 0.9, j);
            assert!((d - cv).norm() < 1e-6);
        }
        assert!(discrete_amplitude(
            &h,
            &c,
            &c,
            0.9,
            PropagationMethod::Exact,
            FinalState::Position(500)
        )
        .is_err());
    }
}
