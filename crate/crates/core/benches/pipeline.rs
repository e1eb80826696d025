use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gpd_core::action::{validate_action_with, PartialAction};
use gpd_core::dsl::builtin;
use gpd_core::galois::{class_b_with, correspondence_with};
use gpd_core::groupoid::enumerate_subgroupoids_with;
use gpd_core::Exec;

fn load(name: &str, suffix: &str) -> PartialAction {
    builtin(name).unwrap().load().unwrap().action.renamed(|s| format!("{s}{suffix}"))
}

/// Workloads of increasing size: disjoint unions multiply the lattice of
/// subgroupoids and the class of candidate subrings.
fn workloads() -> Vec<(&'static str, PartialAction)> {
    let g12 = load("groupoid-12", "a");
    let exe2 = load("exe2-global", "b");
    let both = g12.disjoint_union(&exe2).unwrap();
    let three = both.disjoint_union(&load("exe1", "c")).unwrap();
    vec![("groupoid-12", g12), ("g12+exe2", both), ("g12+exe2+exe1", three)]
}

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn subgroupoids(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_subgroupoids");
    for (name, a) in workloads() {
        for (label, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(label, name), &a, |b, a| {
                b.iter(|| enumerate_subgroupoids_with(black_box(a.groupoid()), false, exec))
            });
        }
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate_action");
    for (name, a) in workloads() {
        for (label, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(label, name), &a, |b, a| b.iter(|| validate_action_with(black_box(a), exec)));
        }
    }
    group.finish();
}

fn galois(c: &mut Criterion) {
    let mut group = c.benchmark_group("galois");
    group.sample_size(10);
    for (name, a) in workloads().into_iter().take(2) {
        for (label, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(format!("class_b/{label}"), name), &a, |b, a| {
                b.iter(|| class_b_with(black_box(a), exec).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("correspondence/{label}"), name), &a, |b, a| {
                b.iter(|| correspondence_with(black_box(a), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, subgroupoids, validation, galois);
criterion_main!(benches);
