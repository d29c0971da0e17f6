use crate::error::{Error, Result};
use crate::oscillator::{apply_diagonal_in_place, Generator, GridSpec, HamiltonianKind, Potential};
use crate::state::StateVector;
use crate::C64;

/// Highest supported order; `U_6` already has 9375 raw exponentials.
pub const MAX_ORDER: usize = 6;

/// How `H` is split into exactly exponentiable parts.
#[derive(Debug, Clone, PartialEq)]
pub enum Splitting {
    /// `½x² + ½p²`, base `e^{−isx²/4} e^{−isp²/2} e^{−isx²/4}`
    Qho,
    /// `½x⁴ + ½p²`, base `e^{−isx⁴/4} e^{−isp²/2} e^{−isx⁴/4}`
    Quartic,
    /// `V + ½p²`, base `e^{−isV/2} e^{−isp²/2} e^{−isV/2}`
    Custom(Potential),
}

impl Splitting {
    pub fn for_kind(kind: &HamiltonianKind) -> Self {
        match kind {
            HamiltonianKind::Qho => Splitting::Qho,
            HamiltonianKind::Quartic => Splitting::Quartic,
            HamiltonianKind::Custom(v) => Splitting::Custom(v.clone()),
        }
    }

    fn base(&self, s: f64) -> [(Generator, f64); 3] {
        let (outer, w) = match self {
            Splitting::Qho => (Generator::X2, s / 4.0),
            Splitting::Quartic => (Generator::X4, s / 4.0),
            Splitting::Custom(v) => (Generator::Potential(v.clone()), s / 2.0),
        };
        [(outer.clone(), w), (Generator::P2, s / 2.0), (outer, w)]
    }
}

/// Sub-step `s_p = s / (4 − 4^{1/(2p+1)})` used to build order `p + 1`.
pub fn substep(p: usize, s: f64) -> f64 {
    s / (4.0 - 4f64.powf(1.0 / (2 * p + 1) as f64))
}

/// Number of exponentials in `U_p` before merging: `3·5^{p−1}`.
pub fn raw_count(p: usize) -> usize {
    3 * 5usize.pow(p as u32 - 1)
}

/// Ordered product of exponentials `exp(−iθ_j G_j)`, leftmost step applied
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSchedule {
    pub steps: Vec<(Generator, f64)>,
    pub order: usize,
    pub span: f64,
    /// Exponential count of the unmerged recursion.
    pub raw_count: usize,
}

impl GeneratorSchedule {
    pub fn merged_count(&self) -> usize {
        self.steps.len()
    }

    /// Total duration per generator tag, in order of first appearance.
    pub fn durations_by_tag(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> = Vec::new();
        for (g, d) in &self.steps {
            match out.iter_mut().find(|(t, _)| *t == g.tag()) {
                Some(slot) => slot.1 += d,
                None => out.push((g.tag(), *d)),
            }
        }
        out
    }

    /// The inverse product: reversed order, negated durations.
    pub fn inverse(&self) -> Self {
        Self {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|(g, d)| (g.clone(), -d))
                .collect(),
            order: self.order,
            span: -self.span,
            raw_count: self.raw_count,
        }
    }
}

fn expand(p: usize, s: f64, splitting: &Splitting, out: &mut Vec<(Generator, f64)>) {
    if p == 1 {
        out.extend(splitting.base(s));
        return;
    }
    let sp = substep(p - 1, s);
    for span in [sp, sp, s - 4.0 * sp, sp, sp] {
        expand(p - 1, span, splitting, out);
    }
}

/// Recursive symmetric Suzuki formula
/// `U_{p+1}(s) = U_p(s_p)² U_p(s − 4s_p) U_p(s_p)²` over the splitting's
/// base `U_1`, with adjacent equal generators merged.
pub fn build_schedule(p: usize, s: f64, splitting: &Splitting) -> Result<GeneratorSchedule> {
    if p == 0 || p > MAX_ORDER {
        return Err(Error::invalid(format!(
            "order p must be in 1..={MAX_ORDER}, got {p}"
        )));
    }
    if !s.is_finite() {
        return Err(Error::invalid("span s must be finite"));
    }
    let mut raw = Vec::with_capacity(raw_count(p));
    expand(p, s, splitting, &mut raw);
    let raw_len = raw.len();
    let mut steps: Vec<(Generator, f64)> = Vec::with_capacity(raw_len);
    for (g, d) in raw {
        match steps.last_mut() {
            Some((last, acc)) if *last == g => *acc += d,
            _ => steps.push((g, d)),
        }
    }
    Ok(GeneratorSchedule {
        steps,
        order: p,
        span: s,
        raw_count: raw_len,
    })
}

/// A schedule with its diagonal phase vectors precomputed for one grid.
pub struct CompiledSchedule {
    dim: usize,
    steps: Vec<(Vec<C64>, bool)>,
}

impl CompiledSchedule {
    pub fn new(schedule: &GeneratorSchedule, grid: &GridSpec) -> Self {
        let steps = schedule
            .steps
            .iter()
            .filter(|(_, d)| *d != 0.0)
            .map(|(g, d)| (g.phases(grid, *d), g.is_momentum()))
            .collect();
        Self {
            dim: grid.dim(),
            steps,
        }
    }

    pub fn apply_in_place(&self, data: &mut [C64]) {
        assert_eq!(data.len(), self.dim);
        for (phases, momentum) in &self.steps {
            apply_diagonal_in_place(data, phases, *momentum);
        }
    }

    /// Applies the schedule `reps` times.
    pub fn apply(&self, state: &StateVector, reps: usize) -> Result<StateVector> {
        if state.len() != self.dim {
            return Err(Error::invalid(format!(
                "state has length {}, grid has {} points",
                state.len(),
                self.dim
            )));
        }
        let mut out = state.clone();
        for _ in 0..reps {
            self.apply_in_place(out.as_mut_slice());
        }
        Ok(out)
    }
}

pub fn apply_schedule(
    schedule: &GeneratorSchedule,
    grid: &GridSpec,
    state: &StateVector,
) -> Result<StateVector> {
    CompiledSchedule::new(schedule, grid).apply(state, 1)
}
