use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rsym::experiment::{preset, run_preset};
use rsym::families::{tri, two_three};
use rsym::{rat, Schedule, Verifier};

const SCHEDULES: [(&str, Schedule); 2] = [("parallel", Schedule::Parallel), ("sequential", Schedule::Sequential)];

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    for (name, pres) in [("tri_6_15", tri(6, 15)), ("two_three_13_7", two_three(13, 7)), ("two_three_20_15", two_three(20, 15))] {
        for (label, s) in SCHEDULES {
            g.bench_with_input(BenchmarkId::new(label, name), &pres, |b, pres| {
                b.iter(|| {
                    let v = Verifier::with_schedule(pres, s).unwrap();
                    black_box(v.verify(rat(1, 10), s).unwrap())
                })
            });
        }
    }
    g.finish();
}

fn experiment(c: &mut Criterion) {
    let mut g = c.benchmark_group("experiment");
    g.sample_size(10);
    let p = preset("f2-m2-n30").unwrap();
    for (label, s) in SCHEDULES {
        g.bench_function(BenchmarkId::new(label, "f2-m2-n30 x8"), |b| b.iter(|| black_box(run_preset(&p, 8, 0, rat(1, 10), s))));
    }
    g.finish();
}

criterion_group!(benches, verify, experiment);
criterion_main!(benches);
