use super::grid::GridSpec;
use super::hamiltonian::ModelHamiltonian;
use super::hermite::{hermite_states, make_hermite_state};
use super::ops::{apply_momentum_power, apply_position_power};
use crate::error::{Error, Result};
use crate::C64;

/// Largest total power `l1 + l2` accepted by the matrix-element oracles.
pub const MAX_ELEMENT_POWER: usize = 8;

fn check_power(l1: usize, l2: usize) -> Result<()> {
    if l1 + l2 > MAX_ELEMENT_POWER {
        return Err(Error::invalid(format!(
            "l1 + l2 = {} exceeds {MAX_ELEMENT_POWER}",
            l1 + l2
        )));
    }
    Ok(())
}

/// Continuum value `⟨ψ_m| p̂^{l1} x̂^{l2} |ψ_n⟩`.
///
/// Works in the Fock basis with `x̂ = (a + a†)/√2` and `p̂ = i(a† − a)/√2`.
/// A power-`l` polynomial moves `|n⟩` by at most `l` levels, so a basis of
/// dimension `max(m, n) + l1 + l2 + 1` reproduces the value exactly.
pub fn cv_matrix_element(l1: usize, l2: usize, m: usize, n: usize) -> Result<C64> {
    check_power(l1, l2)?;
    let dim = m.max(n) + l1 + l2 + 1;
    let zero = C64::new(0.0, 0.0);
    let mut v = vec![zero; dim];
    v[n] = C64::new(1.0, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let ladder = |v: &[C64], sign: f64, factor: C64| {
        // factor · (a† + sign·a) v
        let mut out = vec![zero; dim];
        for k in 0..dim {
            if k + 1 < dim {
                out[k + 1] += v[k] * ((k + 1) as f64).sqrt();
            }
            if k > 0 {
                out[k - 1] += v[k] * (k as f64).sqrt() * sign;
            }
        }
        out.iter_mut().for_each(|z| *z *= factor);
        out
    };
    for _ in 0..l2 {
        v = ladder(&v, 1.0, C64::new(r, 0.0));
    }
    for _ in 0..l1 {
        v = ladder(&v, -1.0, C64::new(0.0, r));
    }
    Ok(v[m])
}

/// Grid value `⟨ψ_m^d| (p^d)^{l1} (x^d)^{l2} |ψ_n^d⟩` with plain discrete
/// Hermite states.
pub fn discrete_matrix_element(
    grid: &GridSpec,
    l1: usize,
    l2: usize,
    m: usize,
    n: usize,
) -> Result<C64> {
    check_power(l1, l2)?;
    let half = grid.dim() / 2;
    if m > half || n > half {
        return Err(Error::invalid(format!("m, n must not exceed N/2 = {half}")));
    }
    let bra = make_hermite_state(grid, m, false).amplitudes;
    let ket = make_hermite_state(grid, n, false).amplitudes;
    let v = apply_position_power(grid, ket.as_slice(), l2 as u32)?;
    let v = apply_momentum_power(grid, &v, l1 as u32)?;
    Ok(bra
        .as_slice()
        .iter()
        .zip(&v)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// `|⟨φ_m^d|ψ_n^d⟩|` for `m, n ≤ max_n`, with `φ` the Hamiltonian's
/// eigenvectors. Row index `m`, column index `n`.
pub fn overlap_matrix(h: &ModelHamiltonian, max_n: usize) -> Result<Vec<Vec<f64>>> {
    let grid = h.grid();
    if max_n >= grid.dim() {
        return Err(Error::invalid(format!(
            "max_n = {max_n} must be below N = {}",
            grid.dim()
        )));
    }
    let ed = h.eigen()?;
    let psi = hermite_states(grid, max_n);
    Ok((0..=max_n)
        .map(|m| {
            let phi = ed.vector(m);
            psi.iter()
                .map(|p| {
                    phi.iter()
                        .zip(p.as_slice())
                        .map(|(a, b)| a.conj() * b)
                        .sum::<C64>()
                        .norm()
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{build_hamiltonian, HamiltonianKind};

    #[test]
    fn simple_cv_values() {
        assert!((cv_matrix_element(0, 2, 0, 0).unwrap() - 0.5).norm() < 1e-15);
        assert!((cv_matrix_element(0, 1, 1, 0).unwrap() - 0.5f64.sqrt()).norm() < 1e-15);
        // ⟨1|p|0⟩ = i/√2
        assert!(
            (cv_matrix_element(1, 0, 1, 0).unwrap() - C64::new(0.0, 0.5f64.sqrt())).norm() < 1e-15
        );
        assert!(cv_matrix_element(5, 4, 0, 0).is_err());
    }

    #[test]
    fn cv_matches_quadrature() {
        // ⟨ψ_3| p² x² |ψ_3⟩ = −∫ ψ_3'' (x² ψ_3) dx, integrated by a fine
        // midpoint rule with finite-difference second derivatives.
        use crate::oscillator::hermite_eval;
        let (a, b, steps) = (-12.0, 12.0, 48_000);
        let dx = (b - a) / steps as f64;
        let e = 1e-3;
        let mut acc = 0.0;
        for i in 0..steps {
            let x = a + (i as f64 + 0.5) * dx;
            let f = |y: f64| y * y * hermite_eval(3, y);
            let d2 = (f(x + e) - 2.0 * f(x) + f(x - e)) / (e * e);
            acc += -hermite_eval(3, x) * d2 * dx;
        }
        let v = cv_matrix_element(2, 2, 3, 3).unwrap();
        assert!((v.re - acc).abs() < 1e-5 && v.im.abs() < 1e-14, "{v} {acc}");
    }

    #[test]
    fn discrete_agrees_with_cv() {
        let g = GridSpec::new(64).unwrap();
        assert!(discrete_matrix_element(&g, 0, 0, 3, 5).unwrap().norm() < 1e-10);
        let v = discrete_matrix_element(&g, 0, 2, 0, 0).unwrap();
        assert!((v - 0.5).norm() < 1e-10);
        let d = discrete_matrix_element(&g, 2, 2, 4, 4).unwrap();
        let c = cv_matrix_element(2, 2, 4, 4).unwrap();
        assert!((d - c).norm() < 1e-8, "{d} {c}");
    }

    #[test]
    fn overlap_near_identity() {
        let g = GridSpec::new(64).unwrap();
        let h = build_hamiltonian(&g, HamiltonianKind::Qho).unwrap();
        let o = overlap_matrix(&h, 16).unwrap();
        for (n, row) in o.iter().enumerate() {
            assert!(row[n] >= 1.0 - 1e-8, "n={n} {}", row[n]);
        }
        assert!(o[0][1] <= 1e-8);
    }
}
