use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rsym::families::tri;
use rsym::{rat, Schedule, Verifier};
use rsym_oracle::{check_all, enumerate_with_ceiling, Ceiling};

const SCHEDULES: [(&str, Schedule); 2] = [("parallel", Schedule::Parallel), ("sequential", Schedule::Sequential)];

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    let pres = tri(3, 7);
    for (label, s) in SCHEDULES {
        g.bench_function(BenchmarkId::new(label, "tri_3_7 f4"), |b| {
            b.iter(|| black_box(enumerate_with_ceiling(&pres, 4, 40, Ceiling::default(), s).unwrap()))
        });
    }
    g.finish();
}

fn check(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_all");
    g.sample_size(10);
    let pres = tri(4, 5);
    let ds = enumerate_with_ceiling(&pres, 3, 40, Ceiling::default(), Schedule::Parallel).unwrap();
    let v = Verifier::new(&pres).unwrap();
    for (label, s) in SCHEDULES {
        g.bench_function(BenchmarkId::new(label, "tri_4_5 f3"), |b| {
            b.iter(|| black_box(check_all(&ds, &pres, Some(&v), Some(rat(1, 4)), s)))
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, check);
criterion_main!(benches);
