use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symchain::complex::{koszul, tensor_with};
use symchain::homology::homology_with;
use symchain::random::{random_complex, rng, Shape};
use symchain::sym2::sym2_with;
use symchain::theorems::corpus::run_paper_corpus_with;
use symchain::{Execution, FreeComplex, Ring, Scalar};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn koszul4() -> FreeComplex {
    let r = Ring::graded(&["x", "y", "z", "w"]).unwrap();
    let v: Vec<Scalar> = r.variables().iter().map(|n| Scalar::variable(&r, n).unwrap()).collect();
    koszul(&v).unwrap()
}

fn battery(c: &mut Criterion) {
    let k = koszul4();
    let wide = random_complex(&Ring::rationals(), &mut rng(42), Shape { max_rank: 8, max_length: 6, minimal: false }).unwrap();
    let s = sym2_with(&k, Execution::Sequential).unwrap().complex;

    let mut g = c.benchmark_group("tensor");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "K(x,y,z,w)"), &k, |b, x| b.iter(|| tensor_with(x, x, mode).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("sym2");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "K(x,y,z,w)"), &k, |b, x| b.iter(|| sym2_with(x, mode).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "S²K(x,y,z,w), D=6"), &s, |b, x| {
            b.iter(|| homology_with(x, Some(6), mode).unwrap())
        });
        g.bench_with_input(BenchmarkId::new(name, "random over QQ"), &wide, |b, x| {
            b.iter(|| homology_with(x, None, mode).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| run_paper_corpus_with(mode)));
    }
    g.finish();
}

criterion_group!(benches, battery);
criterion_main!(benches);
