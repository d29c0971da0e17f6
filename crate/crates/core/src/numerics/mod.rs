//! Dense numerical kernels: unitary DFTs, the Hermitian eigensolver and
//! straight-line least squares.

mod eigen;
mod fft;
mod fit;

pub use eigen::{eigh, eigvalsh, EigenDecomposition, HermitianMatrix, MAX_QL_ITERATIONS};
pub use fft::{centered_dft_apply, centered_dft_in_place, fft_in_place, fft_unitary, Direction};
pub use fit::{fit_line, FitResult};
