//! State preparation: discrete Gaussians evolved into the oscillator
//! ground state, and the Jaynes-Cummings eigenstate ladder.

mod gaussian;
mod jc;

pub use gaussian::{
    gaussian_state, prepare_ground, prepare_ground_with, truncated_gaussian_prep,
    truncation_radius, unevolved_error, FreeEvolutionSign, GaussianPrepParams, GroundPrep,
};
pub use jc::{
    jc_build, jc_exact_step, ladder_prepare, rung_time, JcSystem, LadderMode, LadderResult,
    DEFAULT_STEP_CONSTANT,
};
