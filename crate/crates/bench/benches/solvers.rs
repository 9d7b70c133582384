use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use hsplit_core::experiment::synthetic_authors;
use hsplit_core::profile_gen::{random_profile, CompatibilityThreshold};
use hsplit_core::{
    h_index, oracle_solve, solve, InstanceBuilder, Limits, Measure, Operation, ProblemInstance, Variant,
};

/// `copies` disjoint blocks of 25 four-article parts, each block with its
/// own 100 citing articles. Deterministic.
fn blocks(copies: usize) -> InstanceBuilder {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = |bound: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % bound as u64) as usize
    };
    let shape: Vec<(usize, usize)> = (0..100).map(|_| (next(100), 1 + next(5))).collect();
    let mut b = InstanceBuilder::new();
    for c in 0..copies {
        for x in 0..100 {
            b.article(format!("x{c}_{x}"));
        }
        for p in 0..25 {
            let members: Vec<String> = (0..4).map(|j| format!("a{c}_{p}_{j}")).collect();
            for (j, a) in members.iter().enumerate() {
                b.owned(a.clone());
                let (first, count) = shape[4 * p + j];
                for i in 0..count {
                    b.cite(format!("x{c}_{}", (first + 7 * i) % 100), a.clone());
                }
            }
            b.part(members);
        }
    }
    b
}

fn dedicated(c: &mut Criterion) {
    let settings = [
        (Operation::Atomizing, Variant::Plain),
        (Operation::Atomizing, Variant::Conservative),
        (Operation::Extracting, Variant::Plain),
        (Operation::Extracting, Variant::Cautious),
        (Operation::Extracting, Variant::Conservative),
        (Operation::Dividing, Variant::Conservative),
    ];
    let limits = Limits::default();
    let mut group = c.benchmark_group("solve");
    for copies in [4, 16, 64] {
        let b = blocks(copies);
        for (op, variant) in settings {
            let k = (variant != Variant::Plain).then_some(copies * 2);
            let inst = b.build(op, variant, Measure::Union, 1, k).unwrap();
            let stats = inst.stats();
            group.throughput(Throughput::Elements((stats.n + stats.m) as u64));
            group.bench_with_input(
                BenchmarkId::new(format!("{op}-{variant}"), copies),
                &inst,
                |bench, inst| bench.iter(|| solve(black_box(inst), &limits).unwrap()),
            );
        }
    }
    group.finish();
}

fn fusion(c: &mut Criterion) {
    let limits = Limits::default();
    let b = blocks(8);
    let inst = b
        .build(Operation::Atomizing, Variant::Plain, Measure::Fusion, 1, None)
        .unwrap();
    c.bench_function("solve/atomizing-fusion", |bench| {
        bench.iter(|| solve(black_box(&inst), &limits).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("oracle");
    for n in [6, 8, 10] {
        let base = random_profile(n, 4, 0.4, 0.7, n as u64);
        for op in Operation::ALL {
            let inst: ProblemInstance = base.with_problem(op, Variant::Plain, Measure::Union, 1, None).unwrap();
            group.bench_with_input(BenchmarkId::new(op.to_string(), n), &inst, |bench, inst| {
                bench.iter(|| oracle_solve(black_box(inst), &limits).unwrap())
            });
        }
    }
    group.finish();
}

fn measures(c: &mut Criterion) {
    let t: CompatibilityThreshold = "0.4".parse().unwrap();
    let authors = synthetic_authors(4, 40, 1);
    let profiles: Vec<_> = authors.iter().map(|(_, a)| (&a.graph, a.profile(t).unwrap())).collect();
    let mut group = c.benchmark_group("h_index");
    for measure in [Measure::Sum, Measure::Union, Measure::Fusion] {
        group.bench_function(measure.to_string(), |bench| {
            bench.iter(|| profiles.iter().map(|(g, p)| h_index(g, p, measure)).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, dedicated, fusion, oracle, measures);
criterion_main!(benches);
