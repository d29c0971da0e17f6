use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform position grid with `N` points `x_j = j·h`, `j = −N/2 … N/2−1`,
/// and spacing `h = sqrt(2π/N)`.
///
/// Storage index `i` corresponds to `j = i − N/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n_dim: usize,
    spacing: f64,
}

impl GridSpec {
    pub fn new(n_dim: usize) -> Result<Self> {
        if n_dim < 4 || !n_dim.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "grid dimension must be even and at least 4, got {n_dim}"
            )));
        }
        Ok(Self {
            n_dim,
            spacing: (2.0 * PI / n_dim as f64).sqrt(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n_dim
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Signed site label of storage index `i`.
    pub fn site(&self, i: usize) -> i64 {
        i as i64 - (self.n_dim / 2) as i64
    }

    /// Storage index of signed site `j`, if it lies on the grid.
    pub fn index_of(&self, j: i64) -> Option<usize> {
        let i = j + (self.n_dim / 2) as i64;
        (0..self.n_dim as i64).contains(&i).then_some(i as usize)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.site(i) as f64 * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_dim).map(|i| self.x(i)).collect()
    }

    /// Comb period `T = N·h = sqrt(2πN)`.
    pub fn period(&self) -> f64 {
        (2.0 * PI * self.n_dim as f64).sqrt()
    }

    /// Amplitude prefactor `(2π/N)^{1/4} = sqrt(h)` of sampled states.
    pub fn amplitude_prefactor(&self) -> f64 {
        self.spacing.sqrt()
    }

    /// Largest quantum number in the low-energy sector `n ≤ c·N`.
    pub fn low_energy_cutoff(&self, c: f64) -> usize {
        (c * self.n_dim as f64).floor() as usize
    }
}
