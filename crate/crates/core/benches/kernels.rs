use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minuscule::appendix;
use minuscule::semigroup;
use minuscule::{Exec, Reps};
use std::hint::black_box;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit");
    for (name, n) in [("spin", 5), ("e6", 6)] {
        let e = appendix::lookup(name, n).unwrap();
        let generic = e.datum.two_rho();
        for (label, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(label, name), &generic, |b, x| {
                b.iter(|| e.datum.orbit_with(black_box(x), None, usize::MAX, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_product");
    let e = appendix::lookup("e6", 6).unwrap();
    let reps = Reps::new(&e.datum);
    let chr = reps.character(&e.gamma).unwrap();
    let square = reps.tensor_character(&chr, &chr).unwrap();
    for (label, exec) in POLICIES {
        group.bench_function(label, |b| b.iter(|| square.mul(black_box(&chr), exec, reps.cap()).unwrap()));
    }
    group.finish();
}

fn levels(c: &mut Criterion) {
    let mut group = c.benchmark_group("level_set");
    group.sample_size(20);
    for (name, n, k) in [("gl", 5, 10), ("gsp", 3, 12)] {
        let a = appendix::lookup(name, n).unwrap().admissible().unwrap();
        for (label, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(label, format!("{name}{n}/k={k}")), &k, |b, &k| {
                b.iter(|| semigroup::level_set_with(&a, k, exec))
            });
        }
    }
    group.finish();
}

fn hilbert(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_basis");
    group.sample_size(10);
    let a = appendix::lookup("gl", 5).unwrap().admissible().unwrap();
    for (label, exec) in POLICIES {
        group.bench_function(label, |b| b.iter(|| semigroup::hilbert_basis_with(&a, 6, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, orbits, characters, levels, hilbert);
criterion_main!(benches);
