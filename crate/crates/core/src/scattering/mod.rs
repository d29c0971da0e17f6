//! Scattering amplitudes, the Hadamard test and the fractional Fourier
//! transform on the discrete harmonic oscillator.

mod amplitude;
mod frft;
mod hadamard;

pub use amplitude::{
    cv_amplitude, cv_position_amplitude, discrete_amplitude, propagate, spectral_state, FinalState,
    PropagationMethod, SpectralCoefficients, DEFAULT_LOW_ENERGY_FRACTION,
};
pub use frft::{frft_apply, read_signal, write_signal};
pub use hadamard::{hadamard_test, Sampling, StatePreparation, SHOT_BLOCK};
