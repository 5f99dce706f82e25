use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ivp_funnel::gadgets::{eval_parallel_f, BitStream};
use ivp_funnel::{enclose_all, extend, parse, Interval, IvpInstance, OpenSet, Precision, Rhs, SolveConfig};

fn instance(text: &str, y0: f64) -> IvpInstance {
    IvpInstance::new(Rhs::Expr(parse(text, 1).unwrap()), OpenSet::auto_growing(1), 0.0, vec![y0]).unwrap()
}

fn interval_ops(c: &mut Criterion) {
    let (a, b) = (Interval::new(-0.3, 1.7), Interval::new(0.25, 0.5));
    c.bench_function("interval mul+add", |bch| bch.iter(|| black_box(a) * black_box(b) + black_box(a)));
    c.bench_function("interval scbrt", |bch| bch.iter(|| black_box(a).scbrt()));
    let e = parse("9*x*(1-x)*scbrt(y) - min(abs(x), y)", 1).unwrap();
    let e = &e.components()[0];
    c.bench_function("expr eval", |bch| bch.iter(|| e.eval(black_box(&[a, b]), Precision::default())));
}

fn gadget(c: &mut Criterion) {
    let streams = [BitStream::new(&[2, 2, 1]).unwrap(), BitStream::new(&[2, 0]).unwrap()];
    let (x, y) = (Interval::new(-0.26, -0.25), Interval::new(-1e-4, 1e-4));
    c.bench_function("parallel gadget eval", |bch| bch.iter(|| eval_parallel_f(&streams, 24, black_box(x), black_box(y))));
}

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("solver");
    g.sample_size(10);
    let exp = instance("y", 1.0);
    let cfg = SolveConfig { depth: 10, ..SolveConfig::default() };
    g.bench_function("enclose_all y'=y depth 10", |bch| bch.iter(|| enclose_all(&exp, 0.0, &[1.0], &cfg).unwrap()));
    let sq = instance("y*y", 1.0);
    let cfg = SolveConfig::default();
    g.bench_function("extend y'=y^2 8 rounds", |bch| bch.iter(|| extend(&sq, 8, &cfg, |_| {}).unwrap()));
    g.finish();
}

criterion_group!(benches, interval_ops, gadget, solver);
criterion_main!(benches);
