use std::f64::consts::TAU;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::DMatrix;
use num_complex::Complex64;
use pairsim_core::oracle;
use pairsim_core::{detect, evaluate, inject_pair, Circuit, Overlap, State, Statistics};

fn test_matrix(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        Complex64::from_polar(1.0 / (n as f64).sqrt(), (i * j) as f64 * TAU / n as f64)
    })
}

fn permanent(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent");
    for n in [4, 8, 12] {
        let m = test_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| oracle::permanent(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let m = test_matrix(12);
    c.bench_function("determinant/12", |b| {
        b.iter(|| oracle::determinant(black_box(&m)).unwrap())
    });
}

fn evaluate_mzi(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_mzi");
    for stats in [Statistics::Boson, Statistics::Fermion] {
        let circuit = Circuit::mzi(0.9, stats);
        let input = inject_pair(0, 1, Overlap::new(0.5).unwrap(), stats, 2)
            .unwrap()
            .state;
        group.bench_function(stats.to_string(), |b| {
            b.iter(|| evaluate(black_box(&circuit), black_box(&input)).unwrap())
        });
        group.bench_function(format!("{stats}/oracle"), |b| {
            let map = circuit.mode_map().unwrap();
            b.iter(|| oracle::evolve(black_box(&map), black_box(&input)).unwrap())
        });
    }
    group.finish();
}

fn boson_cascade(c: &mut Criterion) {
    // four bosons through a chain of splitters over four paths
    let mut circuit = Circuit::new(Statistics::Boson, 4);
    for k in 0..6 {
        circuit = circuit
            .beamsplitter(0.3 + 0.1 * k as f64, k % 3, k % 3 + 1)
            .unwrap()
            .phase(0.7 * k as f64, k % 4)
            .unwrap();
    }
    let input = State::fock(Statistics::Boson, &[1, 1, 1, 1]).unwrap();
    c.bench_function("evaluate/boson_cascade_4", |b| {
        b.iter(|| evaluate(black_box(&circuit), black_box(&input)).unwrap())
    });
}

fn mzi_sweep(c: &mut Criterion) {
    let input = State::fock(Statistics::Boson, &[1, 1]).unwrap();
    c.bench_function("sweep/mzi_boson_64", |b| {
        b.iter(|| {
            (0..64)
                .map(|k| {
                    let circuit = Circuit::mzi(k as f64 * TAU / 64.0, Statistics::Boson);
                    detect(&evaluate(&circuit, &input).unwrap()).probability(&[1, 1])
                })
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, permanent, determinant, evaluate_mzi, boson_cascade, mzi_sweep);
criterion_main!(benches);
