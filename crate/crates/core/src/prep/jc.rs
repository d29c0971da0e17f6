//! Discrete Jaynes-Cummings model `H_JC = (x^d⊗σx − p^d⊗σy)/√2` and the
//! eigenstate ladder built from half Rabi cycles.
//!
//! Amplitudes are stored site-major with the qubit index fastest:
//! `index = 2j + q`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{
    centered_dft_in_place, eigh, Direction, EigenDecomposition, HermitianMatrix,
};
use crate::oscillator::{
    build_hamiltonian, make_hermite_state, momentum_kernel, GridSpec, HamiltonianKind,
    ModelHamiltonian,
};
use crate::state::StateVector;
use crate::C64;

/// Default constant `C` in the per-rung step count `m = ⌈C·n/ε⌉`.
pub const DEFAULT_STEP_CONSTANT: f64 = 4.0;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Debug)]
pub struct JcSystem {
    grid: GridSpec,
    hamiltonian: HermitianMatrix,
    oscillator: ModelHamiltonian,
    eigen: OnceLock<EigenDecomposition>,
}

/// Half Rabi time `t_n = π/(2 sqrt(n+1))` that moves rung `n` to `n+1`.
pub fn rung_time(n: usize) -> f64 {
    PI / (2.0 * ((n + 1) as f64).sqrt())
}

pub fn jc_build(grid: &GridSpec) -> Result<JcSystem> {
    let n = grid.dim();
    let d = 2 * n;
    let p = momentum_kernel(grid, 1);
    let mut e = vec![ZERO; d * d];
    let i = C64::new(0.0, 1.0);
    for a in 0..n {
        for b in 0..n {
            let pab = p[(a + n - b) % n];
            // −p_ab σy = −p_ab [[0, −i], [i, 0]]
            e[(2 * a) * d + 2 * b + 1] += pab * i * FRAC_1_SQRT_2;
            e[(2 * a + 1) * d + 2 * b] -= pab * i * FRAC_1_SQRT_2;
        }
        let x = grid.x(a) * FRAC_1_SQRT_2;
        e[(2 * a) * d + 2 * a + 1] += x;
        e[(2 * a + 1) * d + 2 * a] += x;
    }
    let hamiltonian = HermitianMatrix::new(d, e)?;
    let oscillator = build_hamiltonian(grid, HamiltonianKind::Qho)?;
    Ok(JcSystem {
        grid: *grid,
        hamiltonian,
        oscillator,
        eigen: OnceLock::new(),
    })
}

impl JcSystem {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.hamiltonian
    }

    pub fn eigen(&self) -> Result<&EigenDecomposition> {
        if let Some(e) = self.eigen.get() {
            return Ok(e);
        }
        let ed = eigh(&self.hamiltonian)?;
        Ok(self.eigen.get_or_init(|| ed))
    }

    /// Oscillator eigenstate `|φ_n^d⟩`, signed to overlap positively with
    /// the discrete Hermite state so that ladder phases are consistent.
    pub fn oscillator_state(&self, n: usize) -> Result<StateVector> {
        if n >= self.grid.dim() {
            return Err(Error::invalid(format!("level {n} outside the grid")));
        }
        let phi = self.oscillator.eigen()?.eigenstate(n);
        let psi = make_hermite_state(&self.grid, n, false).amplitudes;
        let ov = psi.inner(&phi);
        let phase = if ov.norm() > 0.0 {
            ov.conj() / ov.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        Ok(phi.scaled(phase))
    }

    /// `|φ⟩ ⊗ |q⟩`.
    pub fn product_state(&self, phi: &StateVector, q: usize) -> StateVector {
        let mut out = StateVector::zeros(2 * phi.len());
        for (j, a) in phi.as_slice().iter().enumerate() {
            out[2 * j + q] = *a;
        }
        out
    }

    /// `|γ±_n⟩ = (|φ_n⟩|0⟩ ± |φ_{n+1}⟩|1⟩)/√2`.
    pub fn gamma_state(&self, n: usize, plus: bool) -> Result<StateVector> {
        let mut g = self.product_state(&self.oscillator_state(n)?, 0);
        let upper = self.product_state(&self.oscillator_state(n + 1)?, 1);
        g.axpy(C64::new(if plus { 1.0 } else { -1.0 }, 0.0), &upper);
        Ok(g.scaled(C64::new(FRAC_1_SQRT_2, 0.0)))
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.len() != 2 * self.grid.dim() {
            return Err(Error::invalid(format!(
                "state has length {}, expected {}",
                state.len(),
                2 * self.grid.dim()
            )));
        }
        Ok(())
    }

    /// `exp(−i H_JC t)·state`.
    pub fn evolve(&self, t: f64, state: &StateVector) -> Result<StateVector> {
        self.check(state)?;
        if t == 0.0 {
            return Ok(state.clone());
        }
        let ed = self.eigen()?;
        Ok(StateVector::from_vec_unchecked(
            ed.apply_spectral(state.as_slice(), |e| C64::from_polar(1.0, -e * t)),
        ))
    }

    /// One first-order step
    /// `W(s) = exp(−i (x⊗σx) s/√2) · exp(+i (p⊗σy) s/√2)`.
    pub fn trotter_step_in_place(&self, s: f64, data: &mut [C64], scratch: &mut [Vec<C64>; 2]) {
        let n = self.grid.dim();
        let w = s * FRAC_1_SQRT_2;
        // p⊗σy factor: move both qubit components to momentum space.
        for q in 0..2 {
            for j in 0..n {
                scratch[q][j] = data[2 * j + q];
            }
            centered_dft_in_place(&mut scratch[q], Direction::Forward).expect("even grid");
        }
        for k in 0..n {
            // exp(+iφσy) = cos φ + i sin φ σy = [[c, s], [−s, c]]
            let (sn, cs) = (w * self.grid.x(k)).sin_cos();
            let (u0, u1) = (scratch[0][k], scratch[1][k]);
            scratch[0][k] = u0 * cs + u1 * sn;
            scratch[1][k] = u1 * cs - u0 * sn;
        }
        for q in 0..2 {
            centered_dft_in_place(&mut scratch[q], Direction::Inverse).expect("even grid");
            for j in 0..n {
                data[2 * j + q] = scratch[q][j];
            }
        }
        for j in 0..n {
            // exp(−iθσx) = cos θ − i sin θ σx
            let (sn, cs) = (w * self.grid.x(j)).sin_cos();
            let (u0, u1) = (data[2 * j], data[2 * j + 1]);
            let mi = C64::new(0.0, -sn);
            data[2 * j] = u0 * cs + u1 * mi;
            data[2 * j + 1] = u1 * cs + u0 * mi;
        }
    }

    /// `W(s)^m · state`.
    pub fn trotter_evolve(&self, s: f64, m: usize, state: &StateVector) -> Result<StateVector> {
        self.check(state)?;
        let n = self.grid.dim();
        let mut scratch = [vec![ZERO; n], vec![ZERO; n]];
        let mut out = state.clone();
        for _ in 0..m {
            self.trotter_step_in_place(s, out.as_mut_slice(), &mut scratch);
        }
        Ok(out)
    }

    /// `‖(H_JC − sqrt(n+1))|γ⁺_n⟩‖`.
    pub fn gamma_residual(&self, n: usize) -> Result<f64> {
        let g = self.gamma_state(n, true)?;
        let mut hg = StateVector::from_vec_unchecked(self.hamiltonian.matvec(g.as_slice()));
        hg.axpy(C64::new(-((n + 1) as f64).sqrt(), 0.0), &g);
        Ok(hg.norm())
    }

    /// `‖(W(s) − exp(−i H_JC s))|γ⁺_n⟩‖`.
    pub fn step_defect(&self, n: usize, s: f64) -> Result<f64> {
        let g = self.gamma_state(n, true)?;
        let a = self.trotter_evolve(s, 1, &g)?;
        let b = self.evolve(s, &g)?;
        Ok(a.distance(&b))
    }
}

/// Applies `exp(−i H_JC t_n)`.
pub fn jc_exact_step(system: &JcSystem, n: usize, state: &StateVector) -> Result<StateVector> {
    system.evolve(rung_time(n), state)
}

fn flip_qubit(state: &mut StateVector) {
    for pair in state.as_mut_slice().chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LadderMode {
    Exact,
    /// First-order splitting with `m = ⌈C·n_target/ε⌉` steps per rung.
    Trotter {
        eps: f64,
        step_constant: f64,
    },
}

#[derive(Debug, Clone)]
pub struct LadderResult {
    pub state: StateVector,
    /// `|⟨φ_target, 0|state⟩|`.
    pub fidelity: f64,
    /// Trotter steps per rung (zero in exact mode).
    pub steps_per_rung: usize,
}

/// Climbs `n_target` rungs from `start ⊗ |0⟩`, applying
/// `(1⊗σx)·exp(−i H_JC t_n)` for `n = 0 … n_target−1`.
///
/// `start` defaults to the oscillator ground eigenvector.
pub fn ladder_prepare(
    system: &JcSystem,
    n_target: usize,
    mode: LadderMode,
    start: Option<&StateVector>,
) -> Result<LadderResult> {
    let grid = system.grid;
    if n_target + 1 > grid.dim() / 2 {
        return Err(Error::invalid(format!(
            "n_target = {n_target} exceeds the low-energy range of N = {}",
            grid.dim()
        )));
    }
    let ground;
    let start = match start {
        Some(s) => s,
        None => {
            ground = system.oscillator_state(0)?;
            &ground
        }
    };
    if start.len() != grid.dim() {
        return Err(Error::invalid("start state length does not match the grid"));
    }
    let steps = match mode {
        LadderMode::Exact => 0,
        LadderMode::Trotter { eps, step_constant } => {
            if !(eps > 0.0 && eps < 1.0) || !(step_constant > 0.0) {
                return Err(Error::invalid("trotter mode needs 0 < eps < 1 and C > 0"));
            }
            ((step_constant * n_target as f64 / eps).ceil() as usize).max(1)
        }
    };
    let mut state = system.product_state(start, 0);
    for n in 0..n_target {
        state = match mode {
            LadderMode::Exact => jc_exact_step(system, n, &state)?,
            LadderMode::Trotter { .. } => {
                system.trotter_evolve(rung_time(n) / steps as f64, steps, &state)?
            }
        };
        flip_qubit(&mut state);
    }
    let target = system.product_state(&system.oscillator_state(n_target)?, 0);
    let fidelity = target.inner(&state).norm();
    Ok(LadderResult {
        state,
        fidelity,
        steps_per_rung: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit_line;

    #[test]
    fn small_system_hermitian() {
        let sys = jc_build(&GridSpec::new(4).unwrap()).unwrap();
        assert_eq!(sys.matrix().dim(), 8);
    }

    #[test]
    fn chiral_spectrum() {
        let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
        let e = sys.eigen().unwrap().eigenvalues();
        let d = e.len();
        for k in 0..d {
            assert!((e[k] + e[d - 1 - k]).abs() < 1e-8);
        }
    }

    #[test]
    fn gamma_is_near_eigenvector() {
        let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
        assert!(sys.gamma_residual(0).unwrap() <= 1e-6);
    }

    #[test]
    fn half_rabi_cycle_climbs() {
        let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
        let start = sys.product_state(&sys.oscillator_state(0).unwrap(), 0);
        let out = jc_exact_step(&sys, 0, &start).unwrap();
        let target = sys
            .product_state(&sys.oscillator_state(1).unwrap(), 1)
            .scaled(C64::new(0.0, -1.0));
        assert!(out.distance(&target) < 1e-5, "{}", out.distance(&target));
        assert_eq!(sys.evolve(0.0, &start).unwrap(), start);
        // A full Rabi cycle returns −|φ_0⟩|0⟩.
        let twice = jc_exact_step(&sys, 0, &out).unwrap();
        let minus = start.clone().scaled(C64::new(-1.0, 0.0));
        assert!(twice.distance(&minus) < 1e-5);
    }

    #[test]
    fn ladder_modes() {
        let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
        let zero = ladder_prepare(&sys, 0, LadderMode::Exact, None).unwrap();
        assert_eq!(zero.fidelity, 1.0);
        let exact = ladder_prepare(&sys, 3, LadderMode::Exact, None).unwrap();
        assert!(exact.fidelity >= 1.0 - 1e-4, "{}", exact.fidelity);
        assert!((exact.state.norm() - 1.0).abs() < 1e-10);
        let mode = LadderMode::Trotter {
            eps: 0.05,
            step_constant: DEFAULT_STEP_CONSTANT,
        };
        let trotter = ladder_prepare(&sys, 3, mode, None).unwrap();
        assert!(trotter.fidelity >= 0.9, "{}", trotter.fidelity);
        assert!((trotter.state.norm() - 1.0).abs() < 1e-10);
        assert_eq!(trotter.steps_per_rung, 240);
    }

    #[test]
    fn step_defect_is_quadratic() {
        let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
        let ss = [0.025, 0.05, 0.1, 0.2];
        let xs: Vec<f64> = ss.iter().map(|s: &f64| s.ln()).collect();
        let ys: Vec<f64> = ss
            .iter()
            .map(|&s| sys.step_defect(0, s).unwrap().ln())
            .collect();
        let fit = fit_line(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 0.3, "{}", fit.slope);
    }
}
