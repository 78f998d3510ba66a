use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cobordism_schubert::flagring::FlagContext;
use cobordism_schubert::par::ExecMode;
use cobordism_schubert::sample;
use cobordism_schubert::schubert::{poly_times_bs, product_bs};
use cobordism_schubert::weylops::Word;

const MODES: [(&str, ExecMode); 2] = [
    ("parallel", ExecMode::Parallel),
    ("sequential", ExecMode::Sequential),
];

// Contexts are rebuilt per iteration so the memo tables start cold.
fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("product_bs");
    group.sample_size(10);
    let (left, right) = (Word::new(vec![1, 2, 3, 2]), Word::new(vec![3, 2, 1, 2]));
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "n4"), &mode, |bench, &mode| {
            bench.iter(|| {
                let ctx = FlagContext::with_mode(4, mode).unwrap();
                black_box(product_bs(&ctx, &left, &right).unwrap())
            })
        });
    }
    group.finish();
}

fn polynomial_times_class(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_times_bs");
    group.sample_size(10);
    let word = Word::new(vec![2, 1, 3, 2, 1]);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "n4"), &mode, |bench, &mode| {
            bench.iter(|| {
                let ctx = FlagContext::with_mode(4, mode).unwrap();
                let f = sample::flag_elem(&ctx, &mut ChaCha8Rng::seed_from_u64(7), 8);
                black_box(poly_times_bs(&ctx, &f, &word).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, products, polynomial_times_class);
criterion_main!(benches);
