use std::sync::OnceLock;

use super::grid::GridSpec;
use super::ops::Potential;
use crate::error::{Error, Result};
use crate::numerics::{eigh, eigvalsh, EigenDecomposition, HermitianMatrix};
use crate::C64;

/// Relative symmetrisation deviation above which assembly is rejected.
const HERMITICITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianKind {
    /// `½((x^d)² + (p^d)²)`
    Qho,
    /// `½((p^d)² + (x^d)⁴)`
    Quartic,
    /// `½(p^d)² + V(x^d)`
    Custom(Potential),
}

impl HamiltonianKind {
    pub fn potential(&self, x: f64) -> f64 {
        match self {
            HamiltonianKind::Qho => 0.5 * x * x,
            HamiltonianKind::Quartic => 0.5 * x.powi(4),
            HamiltonianKind::Custom(v) => v.eval(x),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianKind::Qho => "qho",
            HamiltonianKind::Quartic => "quartic",
            HamiltonianKind::Custom(_) => "custom",
        }
    }
}

/// Dense discrete Hamiltonian with a lazily computed, write-once
/// eigendecomposition.
#[derive(Debug)]
pub struct ModelHamiltonian {
    grid: GridSpec,
    kind: HamiltonianKind,
    matrix: HermitianMatrix,
    deviation: f64,
    eigen: OnceLock<EigenDecomposition>,
}

/// Assembles `diag(V(x_j)) + ½·F_c^{-1}·diag(x²)·F_c`.
///
/// The kinetic term is Toeplitz with entries
/// `(1/N) Σ_m x_m² e^{i2πm(a−b)/N}`, so only one row is summed explicitly.
pub fn build_hamiltonian(grid: &GridSpec, kind: HamiltonianKind) -> Result<ModelHamiltonian> {
    let n = grid.dim();
    let xs = grid.points();
    let kinetic: Vec<C64> = momentum_kernel(grid, 2)
        .into_iter()
        .map(|z| z * 0.5)
        .collect();
    let mut entries = vec![C64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            entries[a * n + b] = kinetic[(a + n - b) % n];
        }
        entries[a * n + a] += kind.potential(xs[a]);
    }
    let (matrix, deviation) = HermitianMatrix::symmetrized(n, entries)?;
    let allowed = HERMITICITY_TOLERANCE * matrix.max_abs();
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    Ok(ModelHamiltonian {
        grid: *grid,
        kind,
        matrix,
        deviation,
        eigen: OnceLock::new(),
    })
}

impl ModelHamiltonian {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn kind(&self) -> &HamiltonianKind {
        &self.kind
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// `max |A − A^H|` removed by symmetrisation during assembly.
    pub fn symmetrization_deviation(&self) -> f64 {
        self.deviation
    }

    pub fn eigen(&self) -> Result<&EigenDecomposition> {
        if let Some(e) = self.eigen.get() {
            return Ok(e);
        }
        let ed = eigh(&self.matrix)?;
        Ok(self.eigen.get_or_init(|| ed))
    }

    /// Eigenvalues only, reusing the cached decomposition when present.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self.eigen.get() {
            Some(e) => Ok(e.eigenvalues().to_vec()),
            None => eigvalsh(&self.matrix),
        }
    }
}

/// First column of the circulant `F_c^{-1} diag(x^power) F_c`: entry `d`
/// is `(1/N) Σ_m x_m^power e^{i2πmd/N}`, the matrix element for `a − b ≡ d`.
pub(crate) fn momentum_kernel(grid: &GridSpec, power: i32) -> Vec<C64> {
    let n = grid.dim();
    let step = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|d| {
            let sum: C64 = (0..n)
                .map(|i| {
                    let arg = step * (grid.site(i) * d as i64).rem_euclid(n as i64) as f64;
                    C64::from_polar(grid.x(i).powi(power), arg)
                })
                .sum();
            sum / n as f64
        })
        .collect()
}

/// Largest `n` such that `|E_m − E_m^ref| ≤ eps` for every `m ≤ n`, or
/// `None` if already the ground level differs by more than `eps`.
pub fn eigenvalue_threshold(values: &[f64], reference: &[f64], eps: f64) -> Option<usize> {
    values
        .iter()
        .zip(reference)
        .take_while(|(a, b)| (*a - *b).abs() <= eps)
        .count()
        .checked_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{centered_dft_apply, Direction};

    #[test]
    fn qho_ground_energy() {
        let g = GridSpec::new(64).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Qho).unwrap();
        let e = h.eigen().unwrap().eigenvalues()[0];
        assert!((e - 0.5).abs() < 1e-10, "{e}");
        assert!(h.symmetrization_deviation() < 1e-12);
    }

    #[test]
    fn quartic_matches_explicit_dft_product() {
        let n = 64;
        let g = GridSpec::new(n).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Quartic).unwrap();
        // Independent assembly: explicit F_c matrix, M = F^{-1} D F.
        let sign = -1.0;
        let f = |j: i64, k: i64| {
            C64::from_polar(
                1.0 / (n as f64).sqrt(),
                sign * 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64,
            )
        };
        let xs = g.points();
        let mut m = vec![C64::new(0.0, 0.0); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for c in 0..n {
                    acc += f(g.site(c), g.site(a)).conj() * xs[c] * xs[c] * f(g.site(c), g.site(b));
                }
                m[a * n + b] = acc * 0.5;
            }
            m[a * n + a] += 0.5 * xs[a].powi(4);
        }
        let (oracle, _) = HermitianMatrix::symmetrized(n, m).unwrap();
        let a = h.eigenvalues().unwrap();
        let b = eigvalsh(&oracle).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0), "{x} {y}");
        }
    }

    #[test]
    fn kinetic_term_is_conjugated_position() {
        let n = 16;
        let g = GridSpec::new(n).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Custom(Potential::new(|_| 0.0))).unwrap();
        let v: Vec<C64> = (0..n)
            .map(|i| C64::new(i as f64, 1.0 - i as f64 * 0.3))
            .collect();
        let mut w = centered_dft_apply(&v, Direction::Forward).unwrap();
        for (i, a) in w.iter_mut().enumerate() {
            *a *= 0.5 * g.x(i).powi(2);
        }
        let w = centered_dft_apply(&w, Direction::Inverse).unwrap();
        for (a, b) in h.matrix().matvec(&v).iter().zip(&w) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn threshold_is_contiguous_prefix() {
        let a = [1.0, 2.0, 3.5, 4.0];
        let b = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(eigenvalue_threshold(&a, &b, 1e-3), Some(1));
        assert_eq!(eigenvalue_threshold(&[9.0], &[1.0], 1e-3), None);
    }
}
