//! Parallel vs sequential: the same workloads on rayon's global pool and
//! inside a one-thread pool. Build with `--no-default-features` to compare
//! against the sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvduality::duality::variety;
use mvduality::mcnaughton::{compile, pl_equal};
use mvduality::sampling;
use mvduality::terms::{parse_term, Presentation, Term};

fn workloads() -> (Vec<Term>, Vec<Presentation>) {
    let mut rng = sampling::rng(2024);
    let terms = (0..8).map(|_| sampling::term(&mut rng, 3, 6)).collect();
    let pres = (0..6).map(|_| sampling::presentation(&mut rng, 3, 3, 4)).collect();
    (terms, pres)
}

fn bench(c: &mut Criterion) {
    let (terms, pres) = workloads();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let lhs = parse_term("(x0 (+) x1) & (x1 (+) x2) & ~(x0 & x2)").unwrap();
    let rhs = parse_term("~(~(x0 (+) x1) \\/ ~(x1 (+) x2)) & ~(x2 & x0)").unwrap();

    let compile_all = || terms.iter().map(|t| compile(t, 3).unwrap().cells().len()).sum::<usize>();
    let varieties = || pres.iter().map(|p| variety(p).simplices().len()).sum::<usize>();
    let equal = || pl_equal(&compile(&lhs, 3).unwrap(), &compile(&rhs, 3).unwrap()).unwrap();

    let mut g = c.benchmark_group("engine");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("compile", "parallel"), |b| b.iter(compile_all));
    g.bench_function(BenchmarkId::new("compile", "sequential"), |b| b.iter(|| single.install(compile_all)));
    g.bench_function(BenchmarkId::new("variety", "parallel"), |b| b.iter(varieties));
    g.bench_function(BenchmarkId::new("variety", "sequential"), |b| b.iter(|| single.install(varieties)));
    g.bench_function(BenchmarkId::new("pl_equal", "parallel"), |b| b.iter(equal));
    g.bench_function(BenchmarkId::new("pl_equal", "sequential"), |b| b.iter(|| single.install(equal)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
