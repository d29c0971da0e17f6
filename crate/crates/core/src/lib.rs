//! Classical simulation of discretised one-dimensional oscillators.
//!
//! The position operator is diagonal on an even grid of `N` points with
//! spacing `sqrt(2π/N)`, and momentum is obtained by conjugating with the
//! centered discrete Fourier transform. On top of that the crate builds
//!
//! * [`oscillator`]: grids, Hermite states, dense Hamiltonians and
//!   matrix-element oracles,
//! * [`trotter`]: recursive symmetric Suzuki product formulas, exact
//!   propagation and plan selection,
//! * [`sp2`]: the exact `sp(2)` adjoint algebra and the product-formula
//!   defect polynomial,
//! * [`prep`]: Gaussian ground-state preparation and the discrete
//!   Jaynes-Cummings ladder,
//! * [`scattering`]: scattering amplitudes, the Hadamard test and the
//!   fractional Fourier transform,
//!
//! all resting on the dense kernels in [`numerics`].
//!
//! ```
//! use dqho::trotter::plan_error;
//! use dqho::{build_hamiltonian, select_plan, GridSpec, HamiltonianKind};
//!
//! let h = build_hamiltonian(&GridSpec::new(128)?, HamiltonianKind::Qho)?;
//! let plan = select_plan(64, std::f64::consts::FRAC_PI_2, 1e-3)?;
//! assert!(plan_error(&h, &plan, 64)? < 1e-3);
//! # Ok::<(), dqho::Error>(())
//! ```

pub mod error;
pub mod numerics;
pub mod oscillator;
pub mod prep;
pub mod scattering;
pub mod sp2;
pub mod state;
pub mod trotter;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use numerics::{
    centered_dft_apply, eigh, eigvalsh, fft_unitary, fit_line, Direction, EigenDecomposition,
    FitResult, HermitianMatrix,
};
pub use oscillator::{
    build_hamiltonian, hermite_eval, make_hermite_state, Generator, GridSpec, HamiltonianKind,
    HermiteState, ModelHamiltonian,
};
pub use state::StateVector;
pub use trotter::{
    apply_schedule, build_schedule, exact_propagate, select_plan, trotter_error, GeneratorSchedule,
    Splitting, TrotterPlan,
};
