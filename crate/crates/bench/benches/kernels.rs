use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dqho::trotter::CompiledSchedule;
use dqho::{
    build_hamiltonian, build_schedule, centered_dft_apply, eigh, Direction, GridSpec,
    HamiltonianKind, Splitting,
};
use dqho_bench::low_energy_state;

fn centered_dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("centered_dft");
    for n in [256usize, 4096, 65536] {
        let v = low_energy_state(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| centered_dft_apply(black_box(v.as_slice()), Direction::Forward).unwrap())
        });
    }
    group.finish();
}

fn dense_eigh(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigh");
    group.sample_size(10);
    for n in [64usize, 128, 256] {
        let h = build_hamiltonian(&GridSpec::new(n).unwrap(), HamiltonianKind::Quartic).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), h.matrix(), |b, m| {
            b.iter(|| eigh(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn product_formula(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_schedule");
    let n = 512;
    let grid = GridSpec::new(n).unwrap();
    let state = low_energy_state(n);
    for p in [1usize, 2, 3] {
        let schedule = build_schedule(p, 0.05, &Splitting::Qho).unwrap();
        let compiled = CompiledSchedule::new(&schedule, &grid);
        group.bench_with_input(BenchmarkId::new("qho_n512", p), &compiled, |b, s| {
            b.iter(|| s.apply(black_box(&state), 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, centered_dft, dense_eigh, product_formula);
criterion_main!(benches);
