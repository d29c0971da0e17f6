//! Classical simulation of the Hadamard test.
//!
//! The ancilla starts in `|+⟩`, controls `V` on a data register prepared
//! in `|0⟩`, and is measured in the `X` basis (real part) or, after an
//! `S†`, again in the `X` basis (imaginary part). With branch vectors
//! `|0⟩` and `V|0⟩` the outcome-`0` probability is
//! `‖|0⟩ + ω V|0⟩‖²/4` with `ω = 1` or `−i`.

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::C64;

/// Shots per independently seeded block. Fixing the block size makes the
/// estimate independent of how blocks are spread over threads.
pub const SHOT_BLOCK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub shots: u64,
    pub seed: u64,
}

/// `(p0_real, p0_imag)`: probabilities of ancilla outcome 0 in the two
/// readout settings.
fn outcome_probabilities(
    dim: usize,
    v: &dyn Fn(&StateVector) -> Result<StateVector>,
) -> Result<(f64, f64)> {
    let zero = StateVector::basis(dim, 0);
    let branch = v(&zero)?;
    if branch.len() != dim {
        return Err(Error::invalid("unitary changed the register dimension"));
    }
    let prob = |omega: C64| {
        let mut s = zero.clone();
        s.axpy(omega, &branch);
        let norm_sq: f64 = s.as_slice().iter().map(|z| z.norm_sqr()).sum();
        (norm_sq / 4.0).clamp(0.0, 1.0)
    };
    Ok((prob(C64::new(1.0, 0.0)), prob(C64::new(0.0, -1.0))))
}

fn sample_zero_count(p0: f64, shots: u64, seed: u64, stream_offset: u64) -> Result<u64> {
    let dist = Bernoulli::new(p0).map_err(|e| Error::invalid(e.to_string()))?;
    let blocks = shots.div_ceil(SHOT_BLOCK);
    Ok((0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(2 * b + stream_offset);
            let n = SHOT_BLOCK.min(shots - b * SHOT_BLOCK);
            (0..n).filter(|_| dist.sample(&mut rng)).count() as u64
        })
        .sum())
}

/// Estimate of `⟨0|V|0⟩` from `⟨σx⟩ + i⟨σy⟩` of the ancilla; exact when
/// `sampling` is `None`.
pub fn hadamard_test(
    dim: usize,
    v: &dyn Fn(&StateVector) -> Result<StateVector>,
    sampling: Option<Sampling>,
) -> Result<C64> {
    if dim == 0 {
        return Err(Error::invalid("register dimension must be positive"));
    }
    let (p_re, p_im) = outcome_probabilities(dim, v)?;
    match sampling {
        None => Ok(C64::new(2.0 * p_re - 1.0, 2.0 * p_im - 1.0)),
        Some(Sampling { shots, seed }) => {
            if shots == 0 {
                return Err(Error::invalid("shots must be positive"));
            }
            let re = sample_zero_count(p_re, shots, seed, 0)? as f64 / shots as f64;
            let im = sample_zero_count(p_im, shots, seed, 1)? as f64 / shots as f64;
            Ok(C64::new(2.0 * re - 1.0, 2.0 * im - 1.0))
        }
    }
}

/// Unitary mapping `|0⟩` to a given unit vector `φ`: a Householder
/// reflection onto `φ` up to phase, followed by that phase.
#[derive(Debug, Clone)]
pub struct StatePreparation {
    w: Vec<C64>,
    w_norm_sq: f64,
    phase: C64,
}

impl StatePreparation {
    pub fn new(target: &StateVector) -> Result<Self> {
        let norm = target.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!(
                "target must be normalised, got norm {norm}"
            )));
        }
        let t0 = target[0];
        let phase = if t0.norm() > 0.0 {
            t0 / t0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        // R = I − 2ww†/‖w‖², w = e₀ − e^{−iβ}φ, maps e₀ to e^{−iβ}φ.
        let mut w: Vec<C64> = target
            .as_slice()
            .iter()
            .map(|a| -a * phase.conj())
            .collect();
        w[0] += 1.0;
        let w_norm_sq = w.iter().map(|z| z.norm_sqr()).sum();
        Ok(Self {
            w,
            w_norm_sq,
            phase,
        })
    }

    fn reflect(&self, v: &StateVector) -> StateVector {
        if self.w_norm_sq == 0.0 {
            return v.clone();
        }
        let proj: C64 = self
            .w
            .iter()
            .zip(v.as_slice())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let f = proj * (2.0 / self.w_norm_sq);
        let amps = v
            .as_slice()
            .iter()
            .zip(&self.w)
            .map(|(b, a)| b - a * f)
            .collect();
        StateVector::from_vec_unchecked(amps)
    }

    /// `P v`, with `P|0⟩ = φ`.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        self.reflect(v).scaled(self.phase)
    }

    /// `P† v`.
    pub fn apply_adjoint(&self, v: &StateVector) -> StateVector {
        self.reflect(&v.clone().scaled(self.phase.conj()))
    }
}
