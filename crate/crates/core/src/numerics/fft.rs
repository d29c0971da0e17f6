//! Unitary discrete Fourier transforms.
//!
//! Sign convention: the forward transform is
//! `(F v)_k = N^{-1/2} Σ_j exp(-2πi jk/N) v_j`, so that sampled Hermite
//! functions are eigenvectors with eigenvalue `(-i)^n` and the conjugated
//! position operator `F_c^{-1} x F_c` reproduces `p = -i d/dx`.
//!
//! The centered transform acts on vectors stored with index
//! `i = j + N/2`, `j ∈ {-N/2, …, N/2-1}`; it is the plain transform
//! conjugated by a cyclic shift of `N/2` positions.

use std::cell::RefCell;

use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place unitary DFT of any positive length.
pub fn fft_in_place(data: &mut [C64], direction: Direction) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    let dir = match direction {
        Direction::Forward => FftDirection::Forward,
        Direction::Inverse => FftDirection::Inverse,
    };
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft(n, dir));
    plan.process(data);
    let scale = 1.0 / (n as f64).sqrt();
    data.iter_mut().for_each(|z| *z *= scale);
}

/// Unitary DFT of `v`; `inverse(forward(v)) == v` up to rounding.
pub fn fft_unitary(v: &[C64], direction: Direction) -> Vec<C64> {
    let mut out = v.to_vec();
    fft_in_place(&mut out, direction);
    out
}

/// In-place centered DFT; `data.len()` must be even and at least 4.
pub fn centered_dft_in_place(data: &mut [C64], direction: Direction) -> Result<()> {
    let n = data.len();
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "centered DFT needs an even length >= 4, got {n}"
        )));
    }
    data.rotate_left(n / 2);
    fft_in_place(data, direction);
    data.rotate_left(n / 2);
    Ok(())
}

/// Applies the centered DFT `F_c` (or its inverse) to `v`.
pub fn centered_dft_apply(v: &[C64], direction: Direction) -> Result<Vec<C64>> {
    let mut out = v.to_vec();
    centered_dft_in_place(&mut out, direction)?;
    Ok(out)
}
