use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qpad_bench::{frame_free, message};
use qpad_core::{canonical_witnesses, dec, fast_decide, pad, unpad};

fn pad_and_dec(c: &mut Criterion) {
    let x = frame_free(8, 64);
    let mut group = c.benchmark_group("pad_dec");
    for bits in [100usize, 1_000, 10_000] {
        let y = message(bits);
        group.throughput(Throughput::Elements(bits as u64));
        group.bench_with_input(BenchmarkId::new("pad", bits), &y, |b, y| {
            b.iter(|| pad(black_box(&x), black_box(y)).unwrap())
        });
        let z = pad(&x, &y).unwrap();
        group.bench_with_input(BenchmarkId::new("dec", bits), &z, |b, z| {
            b.iter(|| dec(black_box(z)))
        });
        group.bench_with_input(BenchmarkId::new("unpad", bits), &z, |b, z| {
            b.iter(|| unpad(black_box(z)))
        });
    }
    group.finish();
}

fn decide_across_widths(c: &mut Criterion) {
    let mut group = c.benchmark_group("fast_decide");
    let y = message(256);
    for n in [4usize, 12, 20] {
        let (x_in, x_out) = canonical_witnesses(n).unwrap();
        let z = pad(&x_in, &y).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &z, |b, z| {
            b.iter(|| fast_decide(black_box(z), &x_in, &x_out))
        });
    }
    group.finish();
}

criterion_group!(benches, pad_and_dec, decide_across_widths);
criterion_main!(benches);
