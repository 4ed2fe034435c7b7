//! Sequential vs. parallel vertex-enumeration scan.
//!
//! Run with `cargo bench -p lapkit`; disable the default `parallel`
//! feature to time the sequential fallback on its own.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use lapkit::linalg::{Matrix, Vector};
use lapkit::model::{to_dual, DualProblem, PrimalProblem};
use lapkit::scalar::{Rational, Scalar};

/// Deterministic small-integer instance; xorshift keeps the bench free
/// of extra dependencies.
fn instance(m: usize, n: usize, seed: u64) -> DualProblem<Rational> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| Rational::from_int((next() % 5) as i64))
                .collect()
        })
        .collect();
    let mut a = Matrix::from_rows(rows).unwrap();
    for j in 0..n {
        if (0..m).all(|i| a.get(i, j).is_zero()) {
            a.set(j % m, j, Rational::from_int(1));
        }
    }
    let b = Vector::new((0..m).map(|_| Rational::from_int((next() % 9 + 1) as i64)).collect());
    let c = Vector::new((0..n).map(|_| Rational::from_int((next() % 7) as i64)).collect());
    to_dual(&PrimalProblem::new(a, b, c).unwrap())
}

fn bench_oracle(criterion: &mut Criterion) {
    let mut group = criterion.benchmark_group("oracle_scan");
    for (m, n) in [(5, 5), (6, 10)] {
        let dp = instance(m, n, 0x5eed);
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("m{m}_f{}", m + n)),
            &dp,
            |bench, dp| {
                bench.iter(|| black_box(lapkit::oracle_solve_sequential(black_box(dp))));
            },
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("m{m}_f{}", m + n)),
            &dp,
            |bench, dp| {
                bench.iter(|| {
                    black_box(lapkit::baselines::oracle::oracle_solve_parallel(black_box(
                        dp,
                    )))
                });
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_oracle);
criterion_main!(benches);
