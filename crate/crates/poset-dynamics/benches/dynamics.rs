//! Criterion benchmarks over the exhaustive kernels.
//!
//! With the default `parallel` feature each kernel is measured under rayon
//! pools of 1 thread and of the machine's default width, so one run shows
//! the parallel speedup directly. Building the benches with
//! `--no-default-features` measures the true sequential fallback; bench IDs
//! are stable across both so criterion baselines line up.

use criterion::{criterion_group, criterion_main, Criterion};

use poset_dynamics::asm::AsmPoset;
use poset_dynamics::dlm::{ratio, transfer_matrix};
use poset_dynamics::tl::s_vector;
use poset_dynamics::toggles::{orbit_decomposition, Action};

#[cfg(feature = "parallel")]
fn run_variants(c: &mut Criterion, group: &str, mut f: impl FnMut() + Send) {
    let mut g = c.benchmark_group(group);
    for threads in [1usize, rayon::current_num_threads().max(2)] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool construction");
        g.bench_function(format!("threads/{threads}"), |b| {
            b.iter(|| pool.install(&mut f))
        });
    }
    g.finish();
}

#[cfg(not(feature = "parallel"))]
fn run_variants(c: &mut Criterion, group: &str, mut f: impl FnMut()) {
    let mut g = c.benchmark_group(group);
    g.bench_function("sequential", |b| b.iter(&mut f));
    g.finish();
}

fn bench_enumerate_ideals(c: &mut Criterion) {
    let ap = AsmPoset::new(6).expect("order 6 poset");
    run_variants(c, "enumerate_ideals/asm6", || {
        let ideals = ap.poset().ideals();
        assert_eq!(ideals.len(), 7436);
    });
}

fn bench_orbit_decomposition(c: &mut Criterion) {
    let ap = AsmPoset::new(5).expect("order 5 poset");
    run_variants(c, "orbit_decomposition/asm5_rowmotion", || {
        let orbits = orbit_decomposition(ap.poset(), &Action::Rowmotion).expect("decomposition");
        assert!(!orbits.is_empty());
    });
}

fn bench_s_vector(c: &mut Criterion) {
    run_variants(c, "s_vector/n5", || {
        let s = s_vector(5).expect("s vector");
        assert_eq!(s.coords().len(), 42);
    });
}

fn bench_transfer_matrix(c: &mut Criterion) {
    let p = ratio(1, 2);
    run_variants(c, "transfer_matrix/n4_p_half", || {
        let t = transfer_matrix(4, &p).expect("transfer matrix");
        assert_eq!(t.dim(), 14);
    });
}

criterion_group!(
    benches,
    bench_enumerate_ideals,
    bench_orbit_decomposition,
    bench_s_vector,
    bench_transfer_matrix
);
criterion_main!(benches);
