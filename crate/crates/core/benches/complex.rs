//! Complex construction and homology ranks, with the default rayon pool and
//! with a single-thread pool. Without the `parallel` feature only the
//! sequential group runs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tlwords::complex::{build_complex, homology_ranks};
use tlwords::jacobsthal::verify_theorem_d_on;
use tlwords::linalg::rank_lower_bound;
use tlwords::{Convention, Rational};

fn points() -> Vec<Rational> {
    vec![Rational::integer(2), Rational::integer(3)]
}

fn workload(n: usize) {
    let cx = build_complex(n, &Convention::a()).unwrap();
    let rep = homology_ranks(&cx, &points()).unwrap();
    assert!(rep.acyclic_below_top());
}

fn bench_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_and_homology");
    g.sample_size(10);
    for n in [5usize, 6, 7] {
        g.bench_with_input(BenchmarkId::new("default", n), &n, |b, &n| b.iter(|| workload(n)));
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            g.bench_with_input(BenchmarkId::new("one_thread", n), &n, |b, &n| {
                b.iter(|| pool.install(|| workload(n)))
            });
        }
    }
    g.finish();
}

fn bench_pieces(c: &mut Criterion) {
    let cx = build_complex(7, &Convention::b()).unwrap();
    let top = cx.differential(6);
    let x = Rational::integer(2);
    let mut g = c.benchmark_group("n7_pieces");
    g.sample_size(10);
    g.bench_function("modular_rank_top_differential", |b| b.iter(|| rank_lower_bound(top, &x)));
    g.bench_function("jacobsthal_comparison", |b| b.iter(|| verify_theorem_d_on(&cx).unwrap()));
    g.bench_function("dd_zero", |b| b.iter(|| cx.dd_zero()));
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        g.bench_function("jacobsthal_comparison_one_thread", |b| {
            b.iter(|| pool.install(|| verify_theorem_d_on(&cx).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_build, bench_pieces);
criterion_main!(benches);
