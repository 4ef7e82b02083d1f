//! Benchmarks for the hot kernels: orbit counting, exact interval
//! machinery, the trinomial recurrence, and the two kick methods.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gmrotor_core::classical::{
    diffusion_measure_exact, h_n_exact, h_tilde_prime_n, trinomial_masses, ModelParams,
};
use gmrotor_core::goldenmean::{decompose, halfcircle_count};
use gmrotor_core::quantum::{
    iterate_closed_form, kick_coeffs, FloquetOperator, KickMethod, QuantumState,
};

fn golden() -> ModelParams {
    ModelParams::golden(1.0, 1.0).unwrap()
}

fn bench_goldenmean(c: &mut Criterion) {
    let mut group = c.benchmark_group("goldenmean");
    for k in [987u64, 100_000] {
        group.bench_with_input(BenchmarkId::new("halfcircle_count", k), &k, |b, &k| {
            b.iter(|| halfcircle_count(black_box(1.0), k));
        });
    }
    group.bench_function("decompose_1e6_batch", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for k in 999_000..1_000_000u64 {
                acc += decompose(k).unwrap().len();
            }
            acc
        });
    });
    group.finish();
}

fn bench_classical(c: &mut Criterion) {
    let params = golden();
    let mut group = c.benchmark_group("classical");
    group.bench_function("h_tilde_prime_n_2000", |b| {
        b.iter(|| h_tilde_prime_n(black_box(0.7), 2000, &params));
    });
    group.bench_function("h_n_exact_q14", |b| {
        b.iter(|| h_n_exact(987, &params).unwrap());
    });
    group.bench_function("diffusion_measure_exact_10946", |b| {
        b.iter(|| diffusion_measure_exact(10_946, 5.0, &params).unwrap());
    });
    group.bench_function("trinomial_1000", |b| {
        b.iter(|| trinomial_masses(1000, 0.25).unwrap());
    });
    group.finish();
}

fn bench_quantum(c: &mut Criterion) {
    let params = golden();
    let mut group = c.benchmark_group("quantum");
    group.sample_size(20);

    let grid_op = FloquetOperator::new(&params, 1024, 2048, KickMethod::Grid).unwrap();
    let state = QuantumState::gaussian(5.0, 0, 1024).unwrap();
    group.bench_function("step_grid_m1024", |b| {
        b.iter(|| grid_op.step(black_box(&state)).unwrap());
    });

    let conv_op = FloquetOperator::new(&params, 256, 512, KickMethod::Convolution).unwrap();
    let small = QuantumState::gaussian(5.0, 0, 256).unwrap();
    group.bench_function("step_convolution_m256", |b| {
        b.iter(|| conv_op.step(black_box(&small)).unwrap());
    });

    group.bench_function("kick_coeffs_b1024", |b| {
        b.iter(|| kick_coeffs(black_box(1.0), 1024));
    });

    group.bench_function("closed_form_n100_m256", |b| {
        b.iter(|| iterate_closed_form(&small, 100, &params, None).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_goldenmean, bench_classical, bench_quantum);
criterion_main!(benches);
