use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use turner_core::double::Double;
use turner_core::schur::{Mode, SchurAlgebra};
use turner_core::superalgebra::preset;
use turner_core::Exec;

const MODES: [(&str, Exec); 2] = [("Parallel", Exec::Parallel), ("Sequential", Exec::Sequential)];

fn schur_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("schur_table");
    g.sample_size(10);
    for (name, n, d) in [("pq-a2", 2, 2), ("zigzag-a2", 2, 2), ("trivial", 3, 3)] {
        let a = preset(name).unwrap();
        for (label, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(label, format!("{name} n={n} d={d}")), &exec, |b, &exec| {
                b.iter(|| SchurAlgebra::new(black_box(&a), n, d, Mode::Formula, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn double_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_multiplicative");
    g.sample_size(10);
    let x = Double::new(&preset("pq-a2").unwrap(), 1, 3, Exec::Parallel).unwrap();
    let pairs = x.all_pairs();
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::new(label, "pq-a2 n=1 d=3"), |b| b.iter(|| x.check_multiplicative(black_box(&pairs), exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, schur_tables, double_checks);
criterion_main!(benches);
