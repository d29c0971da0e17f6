use super::schedule::raw_count;
use crate::error::{Error, Result};

/// Order and step count for simulating time `t` at accuracy `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrotterPlan {
    pub p: usize,
    pub k: usize,
    pub t: f64,
    /// Step span `t/k`.
    pub s: f64,
    /// Exponentials used, `k · 3·5^{p−1}` (unmerged).
    pub exponentials: usize,
    /// Realised bound `k (n+2) s^{2p+1}`.
    pub realized_bound: f64,
}

/// Picks `p = ⌈sqrt(ln((n+2)t/ε) / (2 ln 5))⌉` (at least 1) and
/// `k = ⌈t·((n+2)t/ε)^{1/(2p)}⌉`, natural logarithms throughout.
pub fn select_plan(n: usize, t: f64, eps: f64) -> Result<TrotterPlan> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("t must be positive, got {t}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1), got {eps}")));
    }
    let ratio = (n as f64 + 2.0) * t / eps;
    let p = if ratio > 1.0 {
        ((ratio.ln() / (2.0 * 5f64.ln())).sqrt().ceil() as usize).max(1)
    } else {
        1
    };
    let p = p.min(super::MAX_ORDER);
    let k = ((t * ratio.powf(1.0 / (2 * p) as f64)).ceil() as usize).max(1);
    let s = t / k as f64;
    Ok(TrotterPlan {
        p,
        k,
        t,
        s,
        exponentials: k * raw_count(p),
        realized_bound: k as f64 * (n as f64 + 2.0) * s.powi(2 * p as i32 + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn formula_values() {
        let plan = select_plan(200, FRAC_PI_2, 1e-3).unwrap();
        let direct = ((202.0 * FRAC_PI_2 / 1e-3f64).ln() / (2.0 * 5f64.ln()))
            .sqrt()
            .ceil();
        assert_eq!(plan.p, direct as usize);
        assert_eq!(plan.p, 2);
        assert!((plan.k as f64 * plan.s - FRAC_PI_2).abs() < 1e-14 * FRAC_PI_2);
        assert!(plan.exponentials <= plan.k * 5usize.pow(plan.p as u32));
    }

    #[test]
    fn larger_eps_never_raises_order() {
        let mut last = usize::MAX;
        for e in [1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.9] {
            let p = select_plan(50, 2.0, e).unwrap().p;
            assert!(p <= last);
            last = p;
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(select_plan(1, 0.0, 1e-3).is_err());
        assert!(select_plan(1, 1.0, 1.5).is_err());
        assert!(select_plan(1, 1.0, 0.0).is_err());
    }
}
