use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use graphene_hf::cutoff::CutoffPair;
use graphene_hf::ground_state::{RadialOccupation, TiProblem};
use graphene_hf::model::{g_cached, g_kernel};
use graphene_hf::operator_lab::{ims_defect, DiscreteOperator, FourierBox};
use graphene_hf::response::{b0_kernel, b_kernel_vw};
use graphene_hf::{ModelParams, QuadratureSpec};

fn exchange_kernel(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    c.bench_function("g_kernel direct R=1", |b| b.iter(|| g_kernel(black_box(1.0), &spec).unwrap()));
    c.bench_function("g_kernel direct R=1e4", |b| b.iter(|| g_kernel(black_box(1e4), &spec).unwrap()));
    g_cached(1.0);
    c.bench_function("g_cached R=37", |b| b.iter(|| g_cached(black_box(37.0))));
}

fn response(c: &mut Criterion) {
    let params = ModelParams::graphene();
    let spec = QuadratureSpec::default();
    g_cached(1.0);
    c.bench_function("b_kernel_vw L=10", |b| b.iter(|| b_kernel_vw(black_box(0.1), &params, &spec).unwrap()));
    c.bench_function("b0_kernel L=10", |b| b.iter(|| b0_kernel(black_box(0.1), &params).unwrap()));
}

fn ground_state(c: &mut Criterion) {
    let mut g = c.benchmark_group("ground_state");
    g.sample_size(10);
    let params = ModelParams::graphene();
    g.bench_function("exchange matrix N=32", |b| b.iter(|| TiProblem::with_nodes(params, 32).unwrap()));
    let problem = TiProblem::with_nodes(params, 64).unwrap();
    g.bench_function("minimize N=64 from zero", |b| {
        b.iter(|| problem.minimize(&RadialOccupation::constant(64, 0.0), 1.0, 5000, 1e-12).unwrap())
    });
    g.finish();
}

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("operator_lab");
    g.sample_size(10);
    let fbox = FourierBox::new(12.0, 1.0, 1).unwrap();
    let gamma = DiscreteOperator::fermi_sea(&fbox, 0.5);
    g.bench_function("ims_defect box 12 R=4", |b| {
        b.iter(|| ims_defect(&gamma, &CutoffPair::bump(4.0), 4.0, &fbox).unwrap())
    });
    g.finish();
}

criterion_group!(benches, exchange_kernel, response, ground_state, operators);
criterion_main!(benches);
