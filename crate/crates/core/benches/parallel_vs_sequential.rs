use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use latori_core::classgroup::max_order_class_group;
use latori_core::cyclo::h_minus_determinant;
use latori_core::devissage::verify_tower;
use latori_core::groups::parse_group;
use latori_core::homalg::flabby_coflabby;
use latori_core::lattices::PiLattice;
use latori_core::par::set_parallel;

const MODES: [(&str, bool); 2] = [("parallel", true), ("sequential", false)];

fn flabby(c: &mut Criterion) {
    let g = Arc::new(parse_group("D6").unwrap());
    let m = PiLattice::regular(g);
    let mut grp = c.benchmark_group("flabby_coflabby_D6_regular");
    for (name, on) in MODES {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_parallel(on);
            b.iter(|| flabby_coflabby(&m).unwrap())
        });
    }
    grp.finish();
}

fn tower(c: &mut Criterion) {
    let g = Arc::new(parse_group("D21").unwrap());
    let m = PiLattice::regular(g);
    let mut grp = c.benchmark_group("verify_tower_D21");
    grp.sample_size(10);
    for (name, on) in MODES {
        grp.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_parallel(on);
            b.iter(|| verify_tower(&m, 21).unwrap())
        });
    }
    grp.finish();
}

fn class_numbers(c: &mut Criterion) {
    let mut grp = c.benchmark_group("class_numbers");
    grp.sample_size(10);
    for (name, on) in MODES {
        grp.bench_function(BenchmarkId::new("h_minus_determinant_59", name), |b| {
            set_parallel(on);
            b.iter(|| h_minus_determinant(59).unwrap())
        });
        grp.bench_function(BenchmarkId::new("class_group_C60", name), |b| {
            set_parallel(on);
            b.iter(|| max_order_class_group(&"C60".parse().unwrap()).unwrap())
        });
    }
    grp.finish();
}

criterion_group!(benches, flabby, tower, class_numbers);
criterion_main!(benches);
