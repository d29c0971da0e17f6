//! Discrete oscillator: grid, position and momentum operators, Hermite
//! states, dense Hamiltonians and matrix-element oracles.

mod elements;
mod grid;
mod hamiltonian;
mod hermite;
mod ops;

pub use elements::{cv_matrix_element, discrete_matrix_element, overlap_matrix, MAX_ELEMENT_POWER};
pub use grid::GridSpec;
pub(crate) use hamiltonian::momentum_kernel;
pub use hamiltonian::{build_hamiltonian, eigenvalue_threshold, HamiltonianKind, ModelHamiltonian};
pub use hermite::{
    comb_cutoff, envelope_bound, hermite_all, hermite_eval, hermite_states, make_hermite_state,
    HermiteState, MIN_COMB_CUTOFF,
};
pub(crate) use ops::apply_diagonal_in_place;
pub use ops::{
    apply_momentum_power, apply_position_power, apply_quadratic_phase, Generator, Potential,
};
