use criterion::{criterion_group, criterion_main, Criterion};
use distinguon::distributions::{
    distinguishable_distribution, ideal_distribution, lossy_distribution, partial_distribution,
};
use distinguon::interferometer::haar_random_unitary;
use distinguon::{DistMatrix, Occupation, RandomSeed};
use std::hint::black_box;

fn engines(c: &mut Criterion) {
    let u = haar_random_unitary(6, RandomSeed(1)).unwrap();
    let s = Occupation::new(vec![1, 1, 1, 1, 0, 0]).unwrap();
    let mut group = c.benchmark_group("distribution_m6_n4");
    group.bench_function("ideal", |b| b.iter(|| ideal_distribution(black_box(&u), &s).unwrap()));
    group.bench_function("distinguishable", |b| {
        b.iter(|| distinguishable_distribution(black_box(&u), &s).unwrap())
    });
    let dist = DistMatrix::distinguishable(4);
    group.bench_function("partial", |b| {
        b.iter(|| partial_distribution(black_box(&u), &s, &dist).unwrap())
    });
    group.bench_function("lossy_k1", |b| {
        b.iter(|| lossy_distribution(black_box(&u), &s, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, engines);
criterion_main!(benches);
