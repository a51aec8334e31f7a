use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twistq::engine::EngineKind;
use twistq::fermionic::{check_kr, Convention, NuVector, RootReading};
use twistq::tableaux::tableaux_char;
use twistq::{Lattice, SpectralParam, TypeSpec};
use twistq_bench::{engine, CASES};

fn engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("kr_char");
    g.sample_size(10);
    for &(ty, i, k) in CASES {
        for kind in [EngineKind::Fold, EngineKind::Fm, EngineKind::Tsys] {
            let id = BenchmarkId::new(kind.name(), format!("{ty}/{i}/{k}"));
            g.bench_function(id, |b| b.iter(|| engine(ty).kr_char(kind, i, k, SpectralParam::base()).unwrap()));
        }
    }
    g.finish();
}

fn tableaux(c: &mut Criterion) {
    let mut g = c.benchmark_group("tableaux");
    g.sample_size(10);
    for (ty, i, k) in [("A4-2", 1, 3), ("D4-3", 2, 2), ("D5-2", 4, 1)] {
        let t = TypeSpec::parse(ty).unwrap();
        g.bench_function(format!("{ty}/{i}/{k}"), |b| b.iter(|| tableaux_char(&t, i, k, SpectralParam::base()).unwrap()));
    }
    g.finish();
}

fn fermionic(c: &mut Criterion) {
    let mut g = c.benchmark_group("fermionic");
    g.sample_size(10);
    for (ty, i, k) in [("A2-2", 0, 3), ("A4-2", 1, 1)] {
        let nu: NuVector = [((i, k), 1)].into_iter().collect();
        g.bench_function(format!("{ty}/{i}/{k}"), |b| {
            b.iter(|| check_kr(&engine(ty), &nu, Lattice::Tilde, RootReading::Parent, Convention::Gamma).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, engines, tableaux, fermionic);
criterion_main!(benches);
