//! Normalised Hermite functions and their grid samplings.
//!
//! `ψ_n(x) = (2ⁿ n! √π)^{-1/2} H_n(x) e^{-x²/2}` is evaluated by the
//! three-term recurrence on `ψ` itself,
//! `ψ_{k+1} = sqrt(2/(k+1)) x ψ_k − sqrt(k/(k+1)) ψ_{k−1}`,
//! seeded with `π^{-1/4}` and a separately tracked log scale so that the
//! Gaussian factor never underflows before the polynomial growth has been
//! accounted for.

use std::f64::consts::PI;

use super::grid::GridSpec;
use crate::state::StateVector;
use crate::C64;

const RESCALE: f64 = 1e150;
const TAIL_TOLERANCE: f64 = 1e-15;
/// Constant of the Gaussian-times-exponential envelope bound.
const ENVELOPE_C3: f64 = 0.7;
/// Smallest comb cutoff used for aliased states.
pub const MIN_COMB_CUTOFF: usize = 3;

fn seed() -> f64 {
    PI.powf(-0.25)
}

/// Normalised Hermite function `ψ_n(x)`.
///
/// Returns exactly zero only when the true value is below the smallest
/// subnormal double.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut log_scale = -0.5 * x * x;
    let mut prev = 0.0;
    let mut cur = seed();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    descale(cur, log_scale)
}

/// `ψ_0(x), …, ψ_{n_max}(x)` from a single recurrence sweep.
pub fn hermite_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_scale = -0.5 * x * x;
    let mut prev = 0.0;
    let mut cur = seed();
    out.push(descale(cur, log_scale));
    for k in 0..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(descale(cur, log_scale));
    }
    out
}

fn descale(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    v.signum() * (v.abs().ln() + log_scale).exp()
}

/// Upper bound `c₃ e^{−y²/2} e^{y sqrt(2n)}` on `|ψ_n(y)|` for `y ≥ sqrt(2n)`.
pub fn envelope_bound(n: usize, y: f64) -> f64 {
    ENVELOPE_C3 * (-0.5 * y * y + y * (2.0 * n as f64).sqrt()).exp()
}

/// Comb cutoff `K` such that every discarded image `|x + kT|`, `|k| > K`,
/// lies where the envelope bound is below `1e-15`; never less than 3.
pub fn comb_cutoff(grid: &GridSpec, n: usize) -> usize {
    let t = grid.period();
    let turning = (2.0 * n as f64).sqrt();
    let mut k = 0usize;
    loop {
        let y = (k as f64 + 0.5) * t;
        if y >= turning && envelope_bound(n, y) < TAIL_TOLERANCE {
            break;
        }
        k += 1;
    }
    k.max(MIN_COMB_CUTOFF)
}

/// Sampled Hermite function `(2π/N)^{1/4} ψ_n(x_j)`, optionally periodised
/// over the comb `x_j + kT`, `|k| ≤ K`.
#[derive(Debug, Clone)]
pub struct HermiteState {
    pub n: usize,
    pub amplitudes: StateVector,
    pub aliased: bool,
    /// Comb cutoff `K`; zero for plain samplings.
    pub comb_cutoff: usize,
}

pub fn make_hermite_state(grid: &GridSpec, n: usize, aliased: bool) -> HermiteState {
    let pref = grid.amplitude_prefactor();
    let t = grid.period();
    let cutoff = if aliased { comb_cutoff(grid, n) } else { 0 };
    let k = cutoff as i64;
    let amps = (0..grid.dim())
        .map(|i| {
            let x = grid.x(i);
            let v: f64 = (-k..=k).map(|m| hermite_eval(n, x + m as f64 * t)).sum();
            C64::new(pref * v, 0.0)
        })
        .collect();
    HermiteState {
        n,
        amplitudes: StateVector::from_vec_unchecked(amps),
        aliased,
        comb_cutoff: cutoff,
    }
}

/// Plain discrete Hermite states `|ψ_0^d⟩ … |ψ_{n_max}^d⟩`.
pub fn hermite_states(grid: &GridSpec, n_max: usize) -> Vec<StateVector> {
    let pref = grid.amplitude_prefactor();
    let mut cols = vec![Vec::with_capacity(grid.dim()); n_max + 1];
    for i in 0..grid.dim() {
        for (col, v) in cols.iter_mut().zip(hermite_all(n_max, grid.x(i))) {
            col.push(C64::new(pref * v, 0.0));
        }
    }
    cols.into_iter()
        .map(StateVector::from_vec_unchecked)
        .collect()
}
