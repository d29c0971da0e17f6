//! Exact `sp(2)` algebra of quadratic operators and the product-formula
//! defect polynomial.
//!
//! Elements are written `a·x² + b·p² + c·{x,p}` with complex coefficients.
//! Under `[x², p²] = 2i{x,p}`, `[x², {x,p}] = 4ix²`, `[p², {x,p}] = −4ip²`
//! the adjoint action `Ad_G(σ)(Y) = e^{−iσG} Y e^{iσG}` closes on this
//! basis:
//!
//! ```text
//! G = x²:  a' = a + 4σc + 4σ²b,  b' = b,               c' = c + 2σb
//! G = p²:  a' = a,               b' = b − 4σc + 4σ²a,  c' = c − 2σa
//! ```
//!
//! For a product `U(s) = E_1 E_2 ⋯ E_m` with `E_j = exp(−i c_j s G_j)` the
//! right logarithmic derivative is
//!
//! ```text
//! U^{-1} ∂_s U = Σ_j Ad(E_{j+1}⋯E_m)^{-1} (−i c_j G_j)
//! ```
//!
//! and conjugation by `E_k^{-1}` is `Ad_{G_k}(−c_k s)`. The sum is
//! accumulated Horner-style from `j = 1`, which keeps every intermediate a
//! polynomial in `s`. The defect is `f_p(s) = U_p^{-1} ∂_s U_p + iH` with
//! `H = ½(x² + p²)`; it vanishes at `s = 0` and its lowest power is `s^{2p}`.

use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};
use crate::oscillator::Generator;
use crate::trotter::{build_schedule, Splitting};
use crate::C64;

/// Degree cap applied to polynomial arithmetic.
pub const DEFAULT_DEGREE_CAP: usize = 2 * 5usize.pow(3);

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `a·x² + b·p² + c·{x,p}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sp2Vector {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl Sp2Vector {
    pub const ZERO: Sp2Vector = Sp2Vector {
        a: ZERO,
        b: ZERO,
        c: ZERO,
    };

    pub fn new(a: C64, b: C64, c: C64) -> Self {
        Self { a, b, c }
    }

    pub fn x2() -> Self {
        Self {
            a: C64::new(1.0, 0.0),
            ..Self::ZERO
        }
    }

    pub fn p2() -> Self {
        Self {
            b: C64::new(1.0, 0.0),
            ..Self::ZERO
        }
    }

    pub fn xp() -> Self {
        Self {
            c: C64::new(1.0, 0.0),
            ..Self::ZERO
        }
    }

    pub fn magnitude(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()).sqrt()
    }

    /// `‖(a x̂² + b p̂² + c{x̂,p̂}) ψ_n‖` for the continuum Hermite state.
    pub fn norm_on_level(&self, n: usize) -> f64 {
        // x² = (A² + A†² + 2N + 1)/2, p² = −(A² + A†² − 2N − 1)/2,
        // {x,p} = i(A†² − A²), with A the annihilation operator.
        let nf = n as f64;
        let up = ((nf + 1.0) * (nf + 2.0)).sqrt();
        let down = (nf * (nf - 1.0)).max(0.0).sqrt();
        let i = C64::new(0.0, 1.0);
        let up_c = (self.a - self.b) * 0.5 + i * self.c;
        let down_c = (self.a - self.b) * 0.5 - i * self.c;
        let diag = (self.a + self.b) * (nf + 0.5);
        (up_c.norm_sqr() * up * up + down_c.norm_sqr() * down * down + diag.norm_sqr()).sqrt()
    }
}

impl Add for Sp2Vector {
    type Output = Sp2Vector;
    fn add(self, o: Sp2Vector) -> Sp2Vector {
        Sp2Vector {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
        }
    }
}

impl AddAssign for Sp2Vector {
    fn add_assign(&mut self, o: Sp2Vector) {
        *self = *self + o;
    }
}

impl Mul<C64> for Sp2Vector {
    type Output = Sp2Vector;
    fn mul(self, k: C64) -> Sp2Vector {
        Sp2Vector {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
        }
    }
}

/// Polynomial in `s` with `Sp2Vector` coefficients; `coeffs[d]` multiplies
/// `s^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sp2Poly {
    coeffs: Vec<Sp2Vector>,
    max_degree: usize,
}

impl Sp2Poly {
    pub fn zero(max_degree: usize) -> Self {
        Self {
            coeffs: Vec::new(),
            max_degree,
        }
    }

    pub fn constant(v: Sp2Vector, max_degree: usize) -> Self {
        let mut p = Self {
            coeffs: vec![v],
            max_degree,
        };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Sp2Vector>, max_degree: usize) -> Result<Self> {
        if coeffs.len() > max_degree + 1 {
            return Err(Error::DegreeOverflow {
                degree: coeffs.len() - 1,
                cap: max_degree,
            });
        }
        let mut p = Self { coeffs, max_degree };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|v| *v == Sp2Vector::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Sp2Vector] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Sp2Vector {
        self.coeffs.get(d).copied().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, s: f64) -> Sp2Vector {
        self.coeffs
            .iter()
            .rev()
            .fold(Sp2Vector::ZERO, |acc, v| acc * C64::new(s, 0.0) + *v)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Sp2Vector::magnitude)
            .fold(0.0, f64::max)
    }

    fn add_shifted(&mut self, v: Sp2Vector, shift: usize) {
        if self.coeffs.len() <= shift {
            self.coeffs.resize(shift + 1, Sp2Vector::ZERO);
        }
        self.coeffs[shift] += v;
    }
}

impl Add<&Sp2Poly> for Sp2Poly {
    type Output = Sp2Poly;
    fn add(mut self, o: &Sp2Poly) -> Sp2Poly {
        for (d, v) in o.coeffs.iter().enumerate() {
            self.add_shifted(*v, d);
        }
        self.trim();
        self
    }
}

/// Which quadratic generates an adjoint action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sp2Generator {
    X2,
    P2,
}

impl TryFrom<&Generator> for Sp2Generator {
    type Error = Error;
    fn try_from(g: &Generator) -> Result<Self> {
        match g {
            Generator::X2 => Ok(Sp2Generator::X2),
            Generator::P2 => Ok(Sp2Generator::P2),
            other => Err(Error::invalid(format!("{} is not in sp(2)", other.tag()))),
        }
    }
}

/// `Ad_G(σ(s))` applied to `target`, where `sigma[k]` is the coefficient
/// of `s^k` in the real scalar `σ(s)`.
pub fn adjoint(generator: Sp2Generator, sigma: &[f64], target: &Sp2Poly) -> Result<Sp2Poly> {
    let sig_deg = sigma.iter().rposition(|&v| v != 0.0);
    let Some(sig_deg) = sig_deg else {
        return Ok(target.clone());
    };
    let Some(deg) = target.degree() else {
        return Ok(target.clone());
    };
    let new_deg = deg + 2 * sig_deg;
    if new_deg > target.max_degree {
        return Err(Error::DegreeOverflow {
            degree: new_deg,
            cap: target.max_degree,
        });
    }
    let sigma = &sigma[..=sig_deg];
    let mut sigma_sq = vec![0.0; 2 * sig_deg + 1];
    for (i, x) in sigma.iter().enumerate() {
        for (j, y) in sigma.iter().enumerate() {
            sigma_sq[i + j] += x * y;
        }
    }
    let mut out = Sp2Poly {
        coeffs: vec![Sp2Vector::ZERO; new_deg + 1],
        max_degree: target.max_degree,
    };
    for (d, v) in target.coeffs.iter().enumerate() {
        out.coeffs[d] += *v;
        let (lin, quad) = match generator {
            // a += 4σc + 4σ²b, c += 2σb
            Sp2Generator::X2 => (
                Sp2Vector {
                    a: v.c * 4.0,
                    b: ZERO,
                    c: v.b * 2.0,
                },
                Sp2Vector {
                    a: v.b * 4.0,
                    b: ZERO,
                    c: ZERO,
                },
            ),
            // b += −4σc + 4σ²a, c += −2σa
            Sp2Generator::P2 => (
                Sp2Vector {
                    a: ZERO,
                    b: v.c * -4.0,
                    c: v.a * -2.0,
                },
                Sp2Vector {
                    a: ZERO,
                    b: v.a * 4.0,
                    c: ZERO,
                },
            ),
        };
        for (k, &sk) in sigma.iter().enumerate() {
            if sk != 0.0 {
                out.coeffs[d + k] += lin * C64::new(sk, 0.0);
            }
        }
        for (k, &sk) in sigma_sq.iter().enumerate() {
            if sk != 0.0 {
                out.coeffs[d + k] += quad * C64::new(sk, 0.0);
            }
        }
    }
    out.trim();
    Ok(out)
}

/// Defect `f_p(s) = U_p(s)^{-1} ∂_s U_p(s) + iH` of the harmonic splitting.
pub fn defect_poly(p: usize) -> Result<Sp2Poly> {
    if !(1..=3).contains(&p) {
        return Err(Error::invalid(format!(
            "defect polynomial supports p in 1..=3, got {p}"
        )));
    }
    defect_poly_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn defect_poly_with_cap(p: usize, cap: usize) -> Result<Sp2Poly> {
    // Durations at s = 1 are the coefficients c_j.
    let schedule = build_schedule(p, 1.0, &Splitting::Qho)?;
    let mut acc = Sp2Poly::zero(cap);
    for (j, (g, c)) in schedule.steps.iter().enumerate() {
        let g = Sp2Generator::try_from(g)?;
        if j > 0 {
            acc = adjoint(g, &[0.0, -c], &acc)?;
        }
        let unit = match g {
            Sp2Generator::X2 => Sp2Vector::x2(),
            Sp2Generator::P2 => Sp2Vector::p2(),
        };
        acc.add_shifted(unit * C64::new(0.0, -c), 0);
        acc.trim();
    }
    let half_i = C64::new(0.0, 0.5);
    acc.add_shifted(
        Sp2Vector {
            a: half_i,
            b: half_i,
            c: ZERO,
        },
        0,
    );
    // The constant term cancels analytically; drop its rounding residue.
    let scale = acc.max_magnitude();
    if let Some(c0) = acc.coeffs.first_mut() {
        if c0.magnitude() <= 1e-13 * scale.max(1.0) {
            *c0 = Sp2Vector::ZERO;
        }
    }
    acc.trim();
    Ok(acc)
}

/// Smallest power whose coefficient magnitude exceeds
/// `rel_tol · max magnitude`.
pub fn lowest_degree(poly: &Sp2Poly, rel_tol: f64) -> Result<usize> {
    let max = poly.max_magnitude();
    if max == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    Ok(poly
        .coeffs
        .iter()
        .position(|v| v.magnitude() > rel_tol * max)
        .expect("maximum is attained"))
}

/// Largest `s` on a doubling/bisection search at which the lowest-degree
/// term still dominates the sum of all higher terms in magnitude.
pub fn dominance_radius(poly: &Sp2Poly, rel_tol: f64) -> Result<f64> {
    let low = lowest_degree(poly, rel_tol)?;
    let lead = poly.coeffs[low].magnitude();
    let dominated = |s: f64| {
        let rest: f64 = poly.coeffs[low + 1..]
            .iter()
            .enumerate()
            .map(|(k, v)| v.magnitude() * s.powi(k as i32 + 1))
            .sum();
        lead >= rest
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while dominated(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Ok(f64::INFINITY);
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if dominated(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
