//! Dense Hermitian eigensolver.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflectors, the complex off-diagonal is made real by a diagonal unitary
//! similarity, and the resulting real symmetric tridiagonal matrix is
//! diagonalised by implicit-shift QL. Eigenvectors are accumulated as
//! `V = Q · D · Z` with `Q` the reflector product, `D` the phase matrix and
//! `Z` the real QL rotations.

use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::C64;

/// Iteration cap for the QL sweep on a single eigenvalue.
pub const MAX_QL_ITERATIONS: usize = 50;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense Hermitian matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl HermitianMatrix {
    /// Wraps row-major `entries`, requiring `|a_jk − conj(a_kj)|` to stay
    /// below `1e-12 · max(1, max |a|)`.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        let (m, deviation) = Self::symmetrized(dim, entries)?;
        let allowed = 1e-12 * m.max_abs().max(1.0);
        if deviation > allowed {
            return Err(Error::NotHermitian { deviation, allowed });
        }
        Ok(m)
    }

    /// Replaces `A` by `(A + A^H)/2` and reports `max |A − A^H|`.
    pub fn symmetrized(dim: usize, mut entries: Vec<C64>) -> Result<(Self, f64)> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {dim}x{dim} entries, got {}",
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("matrix has non-finite entries"));
        }
        let mut deviation: f64 = 0.0;
        for j in 0..dim {
            for k in j..dim {
                let a = entries[j * dim + k];
                let b = entries[k * dim + j].conj();
                deviation = deviation.max((a - b).norm());
                let avg = (a + b) * 0.5;
                entries[j * dim + k] = avg;
                entries[k * dim + j] = avg.conj();
            }
        }
        Ok((Self { dim, entries }, deviation))
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                entries.push(f(j, k));
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.entries[j * self.dim + k]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Eigenvalues in ascending order with paired orthonormal eigenvectors.
///
/// Each eigenvector is phase-fixed so that its largest-magnitude entry
/// (first one on ties) is real and positive.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    /// Column-major: eigenvector `k` is `vectors[k*dim..(k+1)*dim]`.
    vectors: Vec<C64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    pub fn eigenstate(&self, k: usize) -> StateVector {
        StateVector::from_vec_unchecked(self.vector(k).to_vec())
    }

    /// Computes `V · diag(f(E_k)) · V^H · v`.
    pub fn apply_spectral(&self, v: &[C64], f: impl Fn(f64) -> C64) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![ZERO; self.dim];
        for (k, &e) in self.eigenvalues.iter().enumerate() {
            let col = self.vector(k);
            let c: C64 = col.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C64>() * f(e);
            for (o, a) in out.iter_mut().zip(col) {
                *o += c * a;
            }
        }
        out
    }

    /// `max |V^H V − I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let d: C64 = self
                    .vector(a)
                    .iter()
                    .zip(self.vector(b))
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((d - target).norm());
            }
        }
        worst
    }

    /// `max |H V − V Λ|`.
    pub fn residual(&self, h: &HermitianMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.dim {
            let hv = h.matvec(self.vector(k));
            let e = self.eigenvalues[k];
            for (a, b) in hv.iter().zip(self.vector(k)) {
                worst = worst.max((a - b * e).norm());
            }
        }
        worst
    }
}

struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[k]` couples `k` and `k+1`; `off[n-1] = 0`.
    off: Vec<f64>,
    /// Column-major `Q · D`, only when vectors are requested.
    basis: Option<Vec<C64>>,
}

fn tridiagonalize(h: &HermitianMatrix, want_vectors: bool) -> Tridiagonal {
    let n = h.dim;
    let mut a = h.entries.clone();
    let mut off_c = vec![ZERO; n];
    // Reflector k acts on indices k+1..n: P = I − u u^H / half.
    let mut reflectors: Vec<(usize, Vec<C64>, f64)> = Vec::new();
    let mut p = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        let start = k + 1;
        let len = n - start;
        let x: Vec<C64> = (start..n).map(|i| a[i * n + k]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            off_c[k] = x[0];
            continue;
        }
        let x0_abs = x[0].norm();
        let xnorm = (x0_abs * x0_abs + tail).sqrt();
        let phase = if x0_abs > 0.0 {
            x[0] / x0_abs
        } else {
            C64::new(1.0, 0.0)
        };
        let gamma = -phase * xnorm;
        let mut u = x;
        u[0] -= gamma;
        let half = xnorm * (xnorm + x0_abs);
        off_c[k] = gamma;

        // p = B u / half, with B the trailing block.
        let pb = &mut p[..len];
        for (ii, pi) in pb.iter_mut().enumerate() {
            let row = &a[(start + ii) * n + start..(start + ii) * n + n];
            let s: C64 = row.iter().zip(&u).map(|(b, x)| b * x).sum();
            *pi = s / half;
        }
        let upk: C64 = u.iter().zip(pb.iter()).map(|(x, y)| x.conj() * y).sum();
        let kk = upk.re / (2.0 * half);
        for (pi, ui) in pb.iter_mut().zip(&u) {
            *pi -= ui * kk;
        }
        // B -= u q^H + q u^H
        for ii in 0..len {
            let ui = u[ii];
            let qi = pb[ii];
            let row = &mut a[(start + ii) * n + start..(start + ii) * n + n];
            for ((b, uj), qj) in row.iter_mut().zip(&u).zip(pb.iter()) {
                *b -= ui * qj.conj() + qi * uj.conj();
            }
        }
        if want_vectors {
            reflectors.push((start, u, half));
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    // Phase similarity making the off-diagonal real and non-negative.
    let mut phases = vec![C64::new(1.0, 0.0); n];
    let mut off = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let r = off_c[k].norm();
        off[k] = r;
        phases[k + 1] = if r > 0.0 {
            phases[k] * off_c[k] / r
        } else {
            phases[k]
        };
    }

    let basis = want_vectors.then(|| {
        // Row-major Q accumulated backwards: Q = P_0 P_1 ... .
        let mut q = vec![ZERO; n * n];
        for i in 0..n {
            q[i * n + i] = C64::new(1.0, 0.0);
        }
        let mut r = vec![ZERO; n];
        for (start, u, half) in reflectors.iter().rev() {
            let start = *start;
            let r = &mut r[start..];
            r.iter_mut().for_each(|z| *z = ZERO);
            for (ii, ui) in u.iter().enumerate() {
                let row = &q[(start + ii) * n + start..(start + ii) * n + n];
                let cu = ui.conj();
                for (rj, qj) in r.iter_mut().zip(row) {
                    *rj += cu * qj;
                }
            }
            for (ii, ui) in u.iter().enumerate() {
                let f = ui / half;
                let row = &mut q[(start + ii) * n + start..(start + ii) * n + n];
                for (qj, rj) in row.iter_mut().zip(r.iter()) {
                    *qj -= f * rj;
                }
            }
        }
        // Column-major Q·D.
        let mut qd = vec![ZERO; n * n];
        for c in 0..n {
            for i in 0..n {
                qd[c * n + i] = q[i * n + c] * phases[c];
            }
        }
        qd
    });

    Tridiagonal { diag, off, basis }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `z`, when given,
/// is a column-major `n × n` matrix whose columns receive the rotations.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of `h` in ascending order, without eigenvectors.
pub fn eigvalsh(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let mut t = tridiagonalize(h, false);
    tql(&mut t.diag, &mut t.off, None)?;
    let mut d = t.diag;
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eigh(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim;
    let mut t = tridiagonalize(h, true);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql(&mut t.diag, &mut t.off, Some(&mut z))?;
    let basis = t.basis.expect("basis requested");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| t.diag[a].total_cmp(&t.diag[b]).then(a.cmp(&b)));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = vec![ZERO; n * n];
    for (out_col, &col) in order.iter().enumerate() {
        eigenvalues.push(t.diag[col]);
        let dst = &mut vectors[out_col * n..(out_col + 1) * n];
        let zc = &z[col * n..(col + 1) * n];
        for (c, &w) in zc.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let src = &basis[c * n..(c + 1) * n];
            for (o, s) in dst.iter_mut().zip(src) {
                *o += s * w;
            }
        }
        fix_phase(dst);
    }
    Ok(EigenDecomposition {
        dim: n,
        eigenvalues,
        vectors,
    })
}

fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    let pivot = v[best];
    let mag = pivot.norm();
    if mag > 0.0 {
        let rot = pivot.conj() / mag;
        v.iter_mut().for_each(|z| *z *= rot);
        v[best] = C64::new(v[best].re, 0.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let mut x = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut next = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut e = vec![ZERO; n * n];
        for j in 0..n {
            e[j * n + j] = C64::new(next(), 0.0);
            for k in j + 1..n {
                let z = C64::new(next(), next());
                e[j * n + k] = z;
                e[k * n + j] = z.conj();
            }
        }
        HermitianMatrix::new(n, e).unwrap()
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = HermitianMatrix::new(2, vec![ZERO, C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO])
            .unwrap();
        let ed = eigh(&h).unwrap();
        assert!((ed.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!((ed.eigenvalues()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_dim_five() {
        let h = HermitianMatrix::from_fn(5, |j, k| C64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
            .unwrap();
        let ed = eigh(&h).unwrap();
        assert!(ed.eigenvalues().iter().all(|&e| (e - 1.0).abs() < 1e-15));
        assert!(ed.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn one_by_one_and_pauli_y() {
        let h = HermitianMatrix::new(1, vec![C64::new(3.5, 0.0)]).unwrap();
        assert_eq!(eigh(&h).unwrap().eigenvalues(), &[3.5]);
        let y = HermitianMatrix::new(2, vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO])
            .unwrap();
        let ed = eigh(&y).unwrap();
        assert!((ed.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!(ed.residual(&y) < 1e-14);
    }

    #[test]
    fn random_dim_16_reconstruction() {
        let h = random_hermitian(16, 1);
        let ed = eigh(&h).unwrap();
        assert!(ed.residual(&h) <= 1e-10);
        assert!(ed.orthonormality_defect() <= 1e-10 * 16.0);
        assert!(ed.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn random_up_to_256() {
        for (n, seed) in [(3, 2), (31, 3), (64, 4), (129, 5), (256, 6)] {
            let h = random_hermitian(n, seed);
            let ed = eigh(&h).unwrap();
            let scale = h.max_abs() * n as f64;
            assert!(ed.orthonormality_defect() <= 1e-10 * n as f64, "n={n}");
            assert!(ed.residual(&h) <= 1e-9 * scale, "n={n}");
            let vals = eigvalsh(&h).unwrap();
            for (a, b) in vals.iter().zip(ed.eigenvalues()) {
                assert!((a - b).abs() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn deterministic_and_phase_fixed() {
        let h = random_hermitian(20, 8);
        let a = eigh(&h).unwrap();
        let b = eigh(&h).unwrap();
        assert_eq!(a.eigenvalues(), b.eigenvalues());
        assert_eq!(a.vectors, b.vectors);
        for k in 0..20 {
            let v = a.vector(k);
            let big = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let pivot = v.iter().find(|z| z.norm() == big).unwrap();
            assert!(pivot.im == 0.0 && pivot.re > 0.0);
        }
    }

    #[test]
    fn degenerate_and_diagonal_input() {
        let h = HermitianMatrix::from_fn(6, |j, k| {
            if j == k {
                C64::new([2.0, 1.0, 2.0, 0.0, 1.0, 2.0][j], 0.0)
            } else {
                ZERO
            }
        })
        .unwrap();
        let ed = eigh(&h).unwrap();
        assert_eq!(ed.eigenvalues(), &[0.0, 1.0, 1.0, 2.0, 2.0, 2.0]);
        assert!(ed.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let e = vec![ZERO, C64::new(1.0, 0.0), C64::new(2.0, 0.0), ZERO];
        assert!(matches!(
            HermitianMatrix::new(2, e),
            Err(Error::NotHermitian { .. })
        ));
        assert!(HermitianMatrix::new(2, vec![ZERO; 3]).is_err());
    }
}
