use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fole::fincat::{all_passages, ConeKind};
use fole::fixtures::span_shape;
use fole::gen::{self, Bounds, ShapeKind};
use fole::par::Exec;
use fole::univ::{grothendieck, limit_tbl, oracle_universal_with, Convention};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

/// Brute-force universal cone search over a Grothendieck total category:
/// the candidate scan is what gets split across threads.
fn oracle(c: &mut Criterion) {
    let mut r = gen::rng(11);
    let ix = gen::indexed_adjunction(&mut r, 3, 4);
    let total = grothendieck(&ix, Convention::Opfibration).unwrap();
    let d = all_passages(&span_shape(), &total.category).pop().unwrap();
    let pool: Vec<_> = total.category.objects().collect();
    let mut g = c.benchmark_group("oracle_universal");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| oracle_universal_with(exec, &pool, black_box(&d), ConeKind::Limit).unwrap())
        });
    }
    g.finish();
}

/// A batch of independent joins.
fn joins(c: &mut Criterion) {
    let mut r = gen::rng(12);
    let b = Bounds { keys: 6, ..Bounds::default() };
    let dbs: Vec<_> = (0..64)
        .map(|i| {
            let a = gen::type_domain(&mut r, b);
            let kind = if i % 2 == 0 { ShapeKind::Cospan } else { ShapeKind::ThreeArrow };
            gen::database(&mut r, &a, &gen::shape(kind), b)
        })
        .collect();
    let mut g = c.benchmark_group("join_batch");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bch, &exec| {
            bch.iter(|| exec.map(black_box(&dbs), |db| limit_tbl(db).unwrap().vertex().keys().len()))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle, joins);
criterion_main!(benches);
