use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use distinguon::interferometer::haar_random_unitary;
use distinguon::permanent::permanent;
use distinguon::RandomSeed;
use std::hint::black_box;

fn ryser(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent");
    group.sample_size(10);
    for n in [8usize, 12, 16, 20] {
        let u = haar_random_unitary(n, RandomSeed(n as u64)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &u, |b, u| {
            b.iter(|| permanent(black_box(u)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ryser);
criterion_main!(benches);
