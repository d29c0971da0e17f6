use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::C64;

/// Complex amplitudes over a grid (or grid ⊗ qubit).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps `amps`, rejecting empty or non-finite input.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::invalid("state vector must be non-empty"));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("state vector has non-finite entries"));
        }
        Ok(Self { amps })
    }

    pub(crate) fn from_vec_unchecked(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            amps: vec![C64::new(0.0, 0.0); len],
        }
    }

    /// Computational basis state `|index⟩` (storage index).
    pub fn basis(len: usize, index: usize) -> Self {
        let mut s = Self::zeros(len);
        s.amps[index] = C64::new(1.0, 0.0);
        s
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            amps: values.iter().map(|&v| C64::new(v, 0.0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.amps
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm and returns the norm it had before.
    pub fn normalize(&mut self) -> f64 {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            self.amps.iter_mut().for_each(|z| *z *= inv);
        }
        n
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        debug_assert_eq!(self.len(), other.len());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, factor: C64) {
        self.amps.iter_mut().for_each(|z| *z *= factor);
    }

    pub fn scaled(mut self, factor: C64) -> Self {
        self.scale(factor);
        self
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: C64, other: &StateVector) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += factor * b;
        }
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for StateVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

impl IndexMut<usize> for StateVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.amps[i]
    }
}

impl From<StateVector> for Vec<C64> {
    fn from(s: StateVector) -> Self {
        s.amps
    }
}
