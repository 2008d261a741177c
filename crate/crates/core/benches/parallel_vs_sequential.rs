use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use loopbrauer::algebra::{Mode, MultTable};
use loopbrauer::analysis::radical_scan;
use loopbrauer::cellmod::CellModule;
use loopbrauer::diagrams::Family;
use loopbrauer::par::Exec;
use loopbrauer::scalars::{rat, ratio};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("mult_table");
    for (family, n) in [(Family::A, 3), (Family::L, 4)] {
        for (label, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(label, format!("{family}{n}")), &exec, |b, &exec| {
                b.iter(|| MultTable::generate(family, n, Mode::TwoParam, exec))
            });
        }
    }
    g.finish();
}

fn associativity(c: &mut Criterion) {
    let table = MultTable::generate(Family::L, 3, Mode::OneParam, Exec::Parallel);
    let mut g = c.benchmark_group("associativity");
    for (label, exec) in MODES {
        g.bench_function(label, |b| b.iter(|| table.associativity_failures(exec)));
    }
    g.finish();
}

fn modules(c: &mut Criterion) {
    let m = CellModule::new(Family::A, 4, &"1,1".parse().unwrap()).unwrap();
    let mut g = c.benchmark_group("module_rep");
    g.sample_size(20);
    for (label, exec) in MODES {
        g.bench_function(label, |b| b.iter(|| m.module_rep(exec)));
    }
    g.finish();
}

fn radicals(c: &mut Criterion) {
    let x0 = [rat(1), rat(-1), ratio(1, 2), rat(3)];
    let mut g = c.benchmark_group("radical_scan");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::new(label, "L4"), |b| {
            b.iter(|| radical_scan(Family::L, 4, &x0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tables, associativity, modules, radicals);
criterion_main!(benches);
