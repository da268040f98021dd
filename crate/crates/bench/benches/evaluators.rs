use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ladderwave::observables::{gamma_k, identical_spectrum, spectral_density, state_probabilities};
use ladderwave::oracle::{run_oracle, Init, OracleConfig};
use ladderwave::{make_params, Amplitudes, Complex64, GeneralSolution, PulseSpec};

fn closed_forms(c: &mut Criterion) {
    let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
    c.bench_function("state_probabilities", |b| {
        b.iter(|| state_probabilities(black_box(75.0), &p).unwrap())
    });
    c.bench_function("spectral_density", |b| {
        b.iter(|| spectral_density(black_box(1.0), black_box(0.97), &p))
    });
    c.bench_function("identical_spectrum", |b| {
        b.iter(|| identical_spectrum(black_box(-0.01), &p))
    });
    c.bench_function("gamma_k_finite_t", |b| {
        b.iter(|| gamma_k(black_box(1.0), black_box(0.97), 100.0, &p).unwrap())
    });
}

fn pulse(c: &mut Criterion) {
    let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
    let sigma = 50.0;
    let spec = PulseSpec::gaussian(-3.0 * sigma, sigma, p.delta_omega(), 1.0).unwrap();
    let model = GeneralSolution::new(p, Complex64::new(0.0, 0.0), spec).unwrap();
    c.bench_function("general_alpha", |b| b.iter(|| model.alpha(black_box(150.0)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
    let cfg = OracleConfig::for_params(&p)
        .with_modes(101)
        .with_half_width(0.3)
        .with_t_max(50.0);
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("101_modes", |b| {
        b.iter(|| run_oracle(&p, &cfg, &Init::FullyExcited).unwrap())
    });
    group.finish();
}

criterion_group!(benches, closed_forms, pulse, oracle);
criterion_main!(benches);
