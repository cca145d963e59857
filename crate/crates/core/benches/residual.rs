use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cnnw_core::parallel::ExecMode;
use cnnw_core::schemes::{InterpConfig, SchemeKind};
use cnnw_core::solver::cases::euler2d_case;
use cnnw_core::solver::{CaseKind, CaseParams, Discretization};

fn residual(c: &mut Criterion) {
    let mut group = c.benchmark_group("vortex_residual_40x40");
    for kind in [SchemeKind::Cpr, SchemeKind::C5Nnw5, SchemeKind::C2Nnw2] {
        for exec in [ExecMode::Sequential, ExecMode::Parallel] {
            let s = euler2d_case(CaseKind::Vortex, 4, 40, 40, &CaseParams::default()).unwrap();
            let d = Discretization::new(s.law, s.mesh, s.bc, InterpConfig::default(), exec).unwrap();
            let tags = d.uniform_tags(kind);
            let mut out = vec![[0.0; 4]; s.initial.len()];
            let id = BenchmarkId::new(kind.label(4), format!("{exec:?}"));
            group.bench_function(id, |b| b.iter(|| d.residual(&s.initial, &tags, 0.0, &mut out).unwrap()));
        }
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = residual
}
criterion_main!(benches);
