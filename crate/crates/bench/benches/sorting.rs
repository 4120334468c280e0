use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use distack::{
    all_permutations, basis_search, di_sort, enumerate_sortable, MachineConfig, Method, Oracle,
    PatternSet, Permutation,
};

fn bench_di_sort(c: &mut Criterion) {
    let perms: Vec<Permutation> = all_permutations(7).unwrap().collect();
    c.bench_function("di_sort/all length 7", |b| {
        b.iter(|| {
            perms
                .iter()
                .filter(|p| di_sort(black_box(p), true).is_sorted())
                .count()
        })
    });
}

fn bench_avoidance(c: &mut Criterion) {
    let perms: Vec<Permutation> = all_permutations(7).unwrap().collect();
    let basis = PatternSet::di_basis();
    c.bench_function("avoids_all/all length 7", |b| {
        b.iter(|| {
            perms
                .iter()
                .filter(|p| p.avoids_all(black_box(&basis)))
                .count()
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    let oracle = Oracle::default();
    // 3142 inflated to length 10: unsortable, so the search is exhaustive.
    let hard: Permutation = "3 1 4 2 5 6 7 8 9 10".parse().unwrap();
    for spec in ["DI", "II", "DDI"] {
        let config: MachineConfig = spec.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &config, |b, config| {
            b.iter(|| oracle.sortable(black_box(&hard), config).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_sortable");
    group.sample_size(10);
    let di = MachineConfig::di();
    group.bench_function("algorithm n=8", |b| {
        b.iter(|| enumerate_sortable(8, &di, &Method::Algorithm).unwrap())
    });
    group.bench_function("oracle n=7", |b| {
        b.iter(|| enumerate_sortable(7, &di, &Method::Oracle).unwrap())
    });
    group.bench_function("basis_search len 6", |b| {
        b.iter(|| basis_search(6, &di).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_di_sort,
    bench_avoidance,
    bench_oracle,
    bench_enumeration
);
criterion_main!(benches);
