//! Cross-module properties of the discrete oscillator.

use std::f64::consts::{FRAC_PI_2, PI};

use dqho::oscillator::apply_position_power;
use dqho::prep::{jc_build, ladder_prepare, prepare_ground, LadderMode};
use dqho::scattering::{
    cv_amplitude, cv_position_amplitude, discrete_amplitude, frft_apply, hadamard_test,
    spectral_state, FinalState, PropagationMethod, Sampling, SpectralCoefficients,
};
use dqho::sp2::{adjoint, Sp2Generator, Sp2Poly, Sp2Vector};
use dqho::trotter::{exact_propagate, plan_error, trotter_errors, CompiledSchedule};
use dqho::{
    build_hamiltonian, build_schedule, fit_line, hermite_eval, make_hermite_state, select_plan,
    GridSpec, HamiltonianKind, ModelHamiltonian, Splitting, StateVector, C64,
};
use proptest::prelude::*;

fn qho(n: usize) -> ModelHamiltonian {
    build_hamiltonian(&GridSpec::new(n).unwrap(), HamiltonianKind::Qho).unwrap()
}

fn hermite(grid: &GridSpec, n: usize) -> StateVector {
    make_hermite_state(grid, n, false).amplitudes
}

fn residual(h: &ModelHamiltonian, n: usize) -> f64 {
    let psi = hermite(h.grid(), n);
    let mut r = StateVector::new(h.matrix().matvec(psi.as_slice())).unwrap();
    r.axpy(C64::new(-(n as f64 + 0.5), 0.0), &psi);
    r.norm()
}

fn spread(n_prime: usize) -> SpectralCoefficients {
    SpectralCoefficients::normalized(
        (0..=n_prime)
            .map(|n| C64::new(1.0 / (n as f64 + 1.0), 0.25 * n as f64 - 0.4))
            .collect(),
    )
    .unwrap()
}

#[test]
fn ground_residual_decays_exponentially() {
    let ns = [16usize, 24, 32, 40, 48];
    let logs: Vec<f64> = ns.iter().map(|&n| residual(&qho(n), 0).ln()).collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    assert!(fit_line(&xs, &logs).unwrap().slope < 0.0);
    for n in [48, 64] {
        assert!(residual(&qho(n), 0) <= 1e-10);
    }
}

#[test]
fn qho_spectrum_is_positive_and_accurate() {
    let values = qho(256).eigenvalues().unwrap();
    assert!(values.iter().all(|&e| e > 0.0));
    for (n, e) in values.iter().enumerate().take(129) {
        assert!((e - (n as f64 + 0.5)).abs() <= 1e-6, "n={n}: {e}");
    }
}

#[test]
fn error_grows_linearly_in_level() {
    let h = qho(200);
    let levels: Vec<usize> = (4..=50).collect();
    let xs: Vec<f64> = levels.iter().map(|&n| (n as f64).ln()).collect();
    for p in [2, 4] {
        let errs = trotter_errors(&h, p, 1.0, &levels).unwrap();
        let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        let slope = fit_line(&xs, &ys).unwrap().slope;
        assert!((0.8..=1.3).contains(&slope), "p={p}: exponent {slope}");
    }
}

#[test]
fn trotter_order_in_step() {
    let h = qho(64);
    let steps = [0.02, 0.05, 0.1, 0.2];
    let xs: Vec<f64> = steps.iter().map(|s: &f64| s.ln()).collect();
    for p in [1usize, 2] {
        let ys: Vec<f64> = steps
            .iter()
            .map(|&s| trotter_errors(&h, p, s, &[2]).unwrap()[0].ln())
            .collect();
        let slope = fit_line(&xs, &ys).unwrap().slope;
        assert!((slope - (2 * p + 1) as f64).abs() <= 0.3, "p={p}: {slope}");
    }
}

#[test]
fn plans_meet_their_accuracy() {
    for n in [32usize, 64, 128] {
        let h = qho(n);
        for eps in [1e-2, 1e-4, 1e-6] {
            let plan = select_plan(n / 2, FRAC_PI_2, eps).unwrap();
            let err = plan_error(&h, &plan, n / 2).unwrap();
            assert!(
                err < eps,
                "N={n} eps={eps}: p={} k={} err={err}",
                plan.p,
                plan.k
            );
        }
    }
}

#[test]
fn gamma_residual_shrinks_with_grid() {
    for n in [0usize, 2, 4] {
        let r: Vec<f64> = [32, 64, 128]
            .iter()
            .map(|&dim| {
                jc_build(&GridSpec::new(dim).unwrap())
                    .unwrap()
                    .gamma_residual(n)
                    .unwrap()
            })
            .collect();
        // Once the residual reaches roundoff it can no longer fall.
        for w in r.windows(2) {
            assert!(w[1] < w[0] || w[1] <= 1e-12, "n={n}: {r:?}");
        }
    }
}

#[test]
fn jc_step_defect_is_second_order() {
    let sys = jc_build(&GridSpec::new(64).unwrap()).unwrap();
    let mut constant: f64 = 0.0;
    let mut samples = Vec::new();
    for n in [0usize, 1, 3] {
        let root = ((n + 1) as f64).sqrt();
        for eps in [0.025, 0.05, 0.1, 0.2] {
            let d = sys.step_defect(n, eps / root).unwrap();
            constant = constant.max(d / (eps * eps));
            samples.push((eps, d));
        }
    }
    eprintln!("fitted step-defect constant C = {constant:.4}");
    assert!(constant.is_finite() && constant < 1.0);
    // The bound is attained near the smallest steps, not just at one point.
    assert!(samples.iter().all(|&(eps, d)| d <= constant * eps * eps));
}

#[test]
fn ladder_preserves_norm() {
    let g = GridSpec::new(32).unwrap();
    let sys = jc_build(&g).unwrap();
    let prepared = prepare_ground(&g, 3.0).unwrap();
    for mode in [
        LadderMode::Exact,
        LadderMode::Trotter {
            eps: 0.1,
            step_constant: 4.0,
        },
    ] {
        for start in [None, Some(&prepared.state)] {
            let out = ladder_prepare(&sys, 3, mode, start).unwrap();
            assert!((out.state.norm() - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn amplitude_error_falls_with_grid() {
    let c = spread(8);
    let cp = SpectralCoefficients::normalized(
        (0..=8)
            .map(|n| C64::new(((n * 7 % 5) as f64 - 2.0) / 3.0, 0.1 * n as f64))
            .collect(),
    )
    .unwrap();
    let t = 1.1;
    let reference = cv_amplitude(&c, &cp, t).unwrap();
    let errs: Vec<f64> = [32, 64, 128, 256]
        .iter()
        .map(|&n| {
            let a = discrete_amplitude(
                &qho(n),
                &c,
                &cp,
                t,
                PropagationMethod::Exact,
                FinalState::Spectral,
            )
            .unwrap();
            (a - reference).norm()
        })
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= w[0].max(1e-13), "{errs:?}");
    }
}

#[test]
fn position_amplitude_matches_continuum() {
    let h = qho(256);
    let g = h.grid();
    let c = spread(8);
    for t in [0.4, 2.0] {
        for j in [-12i64, -3, 0, 5, 17] {
            let a = discrete_amplitude(
                &h,
                &c,
                &c,
                t,
                PropagationMethod::Exact,
                FinalState::Position(j),
            )
            .unwrap();
            assert!((a - cv_position_amplitude(g, &c, t, j)).norm() <= 1e-6);
        }
    }
}

#[test]
fn hadamard_sampling_converges() {
    let dim = 16;
    type Unitary<'a> = Box<dyn Fn(&StateVector) -> dqho::Result<StateVector> + 'a>;
    let unitaries: [Unitary<'_>; 3] = [
        Box::new(|v: &StateVector| Ok(v.clone().scaled(C64::from_polar(1.0, 0.4)))),
        Box::new(|v: &StateVector| {
            let mut w = v.clone();
            w.as_mut_slice().rotate_right(1);
            let (c, s) = (0.6, 0.8);
            let (a, b) = (v[0], w[0]);
            w.as_mut_slice()[0] = C64::new(c, 0.0) * a + C64::new(0.0, s) * b;
            Ok(w)
        }),
        Box::new(|v: &StateVector| {
            let h = qho(dim);
            exact_propagate(
                &h,
                0.9,
                &StateVector::new(dqho::centered_dft_apply(
                    v.as_slice(),
                    dqho::Direction::Forward,
                )?)?,
            )
        }),
    ];
    for (i, v) in unitaries.iter().enumerate() {
        let exact = hadamard_test(dim, v.as_ref(), None).unwrap();
        let est = hadamard_test(
            dim,
            v.as_ref(),
            Some(Sampling {
                shots: 1_000_000,
                seed: 2024 + i as u64,
            }),
        )
        .unwrap();
        assert!(
            (est - exact).norm() <= 5e-3,
            "instance {i}: {est} vs {exact}"
        );
    }
}

#[test]
fn ground_preparation_phase_convention() {
    let g = GridSpec::new(128).unwrap();
    let target = hermite(&g, 0);
    for delta in [3.0, 7.5, 12.0] {
        let prep = prepare_ground(&g, delta).unwrap();
        let overlap = target.inner(&prep.state);
        assert!(overlap.im.abs() <= 1e-12 && overlap.re > 0.0);
        let flipped = prep.state.clone().scaled(C64::from_polar(1.0, PI));
        assert!(target.inner(&flipped).re < 0.0);
        assert!((target.distance(&prep.state) - prep.error).abs() <= 1e-15);
    }
}

fn low_energy(grid: &GridSpec, seed: &[f64]) -> StateVector {
    let mut v = StateVector::zeros(grid.dim());
    for (n, &w) in seed.iter().enumerate() {
        v.axpy(C64::new(w, 0.5 * w * n as f64), &hermite(grid, n));
    }
    v.normalized()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn position_acts_as_ladder(half in 4usize..40, pick in 0.0f64..1.0) {
        let grid = GridSpec::new(2 * half).unwrap();
        let n = 1 + (pick * (half - 2) as f64) as usize;
        let psi = hermite(&grid, n);
        let xpsi = StateVector::new(apply_position_power(&grid, psi.as_slice(), 1).unwrap()).unwrap();
        let mut expect = hermite(&grid, n - 1).scaled(C64::new((n as f64 / 2.0).sqrt(), 0.0));
        expect.axpy(C64::new(((n + 1) as f64 / 2.0).sqrt(), 0.0), &hermite(&grid, n + 1));
        prop_assert!(xpsi.distance(&expect) <= 1e-10);
    }

    #[test]
    fn hermite_envelope_bound(n in 0usize..3000, x in -120.0f64..120.0) {
        prop_assert!(hermite_eval(n, x).abs() < 1.09);
    }

    #[test]
    fn schedule_counts(p in 1usize..=4, s in 0.01f64..2.0) {
        let sched = build_schedule(p, s, &Splitting::Qho).unwrap();
        prop_assert_eq!(sched.raw_count, 3 * 5usize.pow(p as u32 - 1));
        prop_assert!(sched.raw_count <= 5usize.pow(p as u32));
        if p >= 2 {
            prop_assert!(sched.merged_count() < sched.raw_count);
        }
        // H = x²/2 + p²/2, so each quadratic runs for s/2 in total.
        for momentum in [true, false] {
            let total: f64 = sched.steps.iter().filter(|(g, _)| g.is_momentum() == momentum).map(|(_, d)| d).sum();
            prop_assert!((total - s / 2.0).abs() <= 1e-12 * s.max(1.0));
        }
    }

    #[test]
    fn product_formula_is_unitary(p in 1usize..=3, s in -1.0f64..1.0, reps in 1usize..40) {
        let grid = GridSpec::new(64).unwrap();
        let v = low_energy(&grid, &[1.0, -0.3, 0.7, 0.2]);
        let sched = build_schedule(p, s, &Splitting::Quartic).unwrap();
        let out = CompiledSchedule::new(&sched, &grid).apply(&v, reps).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn sp2_adjoint_inverts(gen_x in any::<bool>(), s0 in -2.0f64..2.0, s1 in -2.0f64..2.0,
                           re in proptest::collection::vec(-1.0f64..1.0, 6)) {
        let g = if gen_x { Sp2Generator::X2 } else { Sp2Generator::P2 };
        let v = Sp2Vector::new(C64::new(re[0], re[1]), C64::new(re[2], re[3]), C64::new(re[4], re[5]));
        let poly = Sp2Poly::constant(v, 16);
        let back = adjoint(g, &[-s0, -s1], &adjoint(g, &[s0, s1], &poly).unwrap()).unwrap();
        for d in 0..=16 {
            let (x, y) = (back.coeff(d), poly.coeff(d));
            let diff = (x.a - y.a).norm() + (x.b - y.b).norm() + (x.c - y.c).norm();
            prop_assert!(diff <= 1e-12 * (1.0 + s0.abs() + s1.abs()).powi(4));
        }
        let fixed = if gen_x { Sp2Vector::x2() } else { Sp2Vector::p2() };
        let moved = adjoint(g, &[s0, s1], &Sp2Poly::constant(fixed, 16)).unwrap();
        prop_assert_eq!(moved.degree(), Some(0));
    }

    #[test]
    fn frft_orders_add(a in -2.5f64..2.5, b in -2.5f64..2.5, w in proptest::collection::vec(-1.0f64..1.0, 5)) {
        let h = qho(64);
        let v = low_energy(h.grid(), &w);
        prop_assume!(v.norm() > 0.5);
        let ex = PropagationMethod::Exact;
        let two = frft_apply(&h, &frft_apply(&h, &v, a, ex).unwrap(), b, ex).unwrap();
        let one = frft_apply(&h, &v, a + b, ex).unwrap();
        prop_assert!(two.distance(&one) <= 1e-6);
    }

    #[test]
    fn exact_propagation_preserves_norm(t in -20.0f64..20.0, w in proptest::collection::vec(-1.0f64..1.0, 5)) {
        let h = qho(48);
        let (v, _) = spectral_state(h.grid(), &SpectralCoefficients::normalized(
            w.iter().map(|&x| C64::new(x, 0.3)).collect()).unwrap());
        prop_assert!((exact_propagate(&h, t, &v).unwrap().norm() - 1.0).abs() <= 1e-11);
    }
}
