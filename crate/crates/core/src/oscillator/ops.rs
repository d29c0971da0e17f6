//! Diagonal operators and the exponentials used by product formulas.
//!
//! Position-diagonal operators act pointwise; momentum operators are
//! realised as `p^d = F_c^{-1} · x^d · F_c`, so any function of `p^d` is a
//! pointwise multiply sandwiched between two centered DFTs.

use std::fmt;
use std::sync::Arc;

use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::numerics::{centered_dft_in_place, Direction};
use crate::state::StateVector;
use crate::C64;

/// Real potential `V(x)` shared between threads.
#[derive(Clone)]
pub struct Potential(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl Potential {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.0)(x)
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Potential(..)")
    }
}

impl PartialEq for Potential {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// Generator `G` of a single exponential `exp(−iθG)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `(x^d)²`
    X2,
    /// `(p^d)²`
    P2,
    /// `(x^d)⁴`
    X4,
    /// `V(x^d)`
    Potential(Potential),
}

impl Generator {
    pub fn tag(&self) -> &'static str {
        match self {
            Generator::X2 => "X2",
            Generator::P2 => "P2",
            Generator::X4 => "X4",
            Generator::Potential(_) => "V",
        }
    }

    /// Whether the generator is diagonal in momentum rather than position.
    pub fn is_momentum(&self) -> bool {
        matches!(self, Generator::P2)
    }

    /// Diagonal values `g(x_j)` in the generator's own eigenbasis.
    pub fn diagonal(&self, grid: &GridSpec) -> Vec<f64> {
        grid.points()
            .into_iter()
            .map(|x| match self {
                Generator::X2 | Generator::P2 => x * x,
                Generator::X4 => x.powi(4),
                Generator::Potential(v) => v.eval(x),
            })
            .collect()
    }

    /// Phases `exp(−iθ g_j)`.
    pub fn phases(&self, grid: &GridSpec, theta: f64) -> Vec<C64> {
        self.diagonal(grid)
            .into_iter()
            .map(|g| C64::from_polar(1.0, -theta * g))
            .collect()
    }
}

fn check_len(grid: &GridSpec, len: usize) -> Result<()> {
    if len != grid.dim() {
        return Err(Error::invalid(format!(
            "state has length {len}, grid has {} points",
            grid.dim()
        )));
    }
    Ok(())
}

/// Multiplies `data` by precomputed diagonal `phases`, in position space or
/// (when `momentum`) between a forward and inverse centered DFT.
pub(crate) fn apply_diagonal_in_place(data: &mut [C64], phases: &[C64], momentum: bool) {
    if momentum {
        centered_dft_in_place(data, Direction::Forward).expect("grid length is even");
    }
    for (a, ph) in data.iter_mut().zip(phases) {
        *a *= ph;
    }
    if momentum {
        centered_dft_in_place(data, Direction::Inverse).expect("grid length is even");
    }
}

/// `exp(−iθG)·state` for a position- or momentum-diagonal generator.
pub fn apply_quadratic_phase(
    grid: &GridSpec,
    state: &StateVector,
    generator: &Generator,
    theta: f64,
) -> Result<StateVector> {
    check_len(grid, state.len())?;
    let mut out = state.clone();
    if theta != 0.0 {
        let phases = generator.phases(grid, theta);
        apply_diagonal_in_place(out.as_mut_slice(), &phases, generator.is_momentum());
    }
    Ok(out)
}

/// `(x^d)^power · v`.
pub fn apply_position_power(grid: &GridSpec, v: &[C64], power: u32) -> Result<Vec<C64>> {
    check_len(grid, v.len())?;
    Ok(v.iter()
        .enumerate()
        .map(|(i, a)| a * grid.x(i).powi(power as i32))
        .collect())
}

/// `(p^d)^power · v`.
pub fn apply_momentum_power(grid: &GridSpec, v: &[C64], power: u32) -> Result<Vec<C64>> {
    check_len(grid, v.len())?;
    let mut w = v.to_vec();
    centered_dft_in_place(&mut w, Direction::Forward)?;
    for (i, a) in w.iter_mut().enumerate() {
        *a *= grid.x(i).powi(power as i32);
    }
    centered_dft_in_place(&mut w, Direction::Inverse)?;
    Ok(w)
}
