use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liegen_core::closure::subalgebra_closure_with;
use liegen_core::exact::rat;
use liegen_core::generators::{shift_pair, PairFamily};
use liegen_core::groups::{freeness_scan_with, OneParameter};
use liegen_core::par::Execution;

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("freeness_scan");
    group.sample_size(10);
    let a = OneParameter::Upper { n: 4, t: rat(8) };
    let b = OneParameter::Corner { n: 4, s: rat(3) };
    for (name, exec) in MODES {
        group.bench_with_input(
            BenchmarkId::new(name, "n4_syll4_exp2"),
            &exec,
            |bench, &exec| bench.iter(|| freeness_scan_with(&a, &b, 4, 2, exec).unwrap()),
        );
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("subalgebra_closure");
    group.sample_size(10);
    for n in [6, 9] {
        let pair = shift_pair(n, PairFamily::Corner).unwrap();
        let seed = [pair.first, pair.second];
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &exec, |bench, &exec| {
                bench.iter(|| subalgebra_closure_with(&seed, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, scan, closure);
criterion_main!(benches);
