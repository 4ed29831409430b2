//! Sequential against parallel execution of the bulk kernels.
//!
//! Without the `parallel` feature both strategies run the same sequential
//! loop.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tensorview::{ew_binary_with, BinaryOp, CoordinateOrder, Operand, Strategy, Tensor};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn sample(n: usize, order: CoordinateOrder) -> Tensor<f64> {
    Tensor::from_fn(&[n, n, 8], order, |c| {
        (c[0] * 31 + c[1] * 7 + c[2]) as f64 * 0.5
    })
    .unwrap()
}

fn elementwise(c: &mut Criterion) {
    let mut group = c.benchmark_group("ew_binary");
    for n in [64, 256] {
        let a = sample(n, CoordinateOrder::LastMajor);
        let b = sample(n, CoordinateOrder::FirstMajor);
        let (a, b) = (Operand::from(&a), Operand::from(&b));
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |bench, _| {
                bench.iter(|| {
                    ew_binary_with(strategy, BinaryOp::Mul, black_box(&a), black_box(&b)).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn materialize(c: &mut Criterion) {
    let mut group = c.benchmark_group("to_tensor");
    for n in [64, 256] {
        let t = sample(n, CoordinateOrder::LastMajor);
        let view = t.view().permuted(&[2, 0, 1]).unwrap();
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |bench, _| {
                bench.iter(|| black_box(&view).to_tensor_with(strategy))
            });
        }
    }
    group.finish();
}

fn resize(c: &mut Criterion) {
    let mut group = c.benchmark_group("resize");
    for n in [64, 256] {
        let t = sample(n, CoordinateOrder::FirstMajor);
        let target = [n + 3, n - 5, 9];
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |bench, _| {
                bench.iter(|| {
                    let mut r = t.clone();
                    r.resize_with(strategy, &target, -1.0).unwrap();
                    r
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, elementwise, materialize, resize);
criterion_main!(benches);
