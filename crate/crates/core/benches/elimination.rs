//! Exact elimination workloads, each run on a one-thread pool and on the
//! default pool. Without the `parallel` feature only the sequential path runs.

use std::sync::Arc;

use bigal_core::galoislab::{certify_galois, Side};
use bigal_core::hopfcore::HopfFd;
use bigal_core::qbuilders::{QContext, SLMatrix};
use bigal_core::CycScalar;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn setup() -> (QContext, Arc<HopfFd>, SLMatrix) {
    let ctx = QContext::new(2, 3).unwrap();
    let h = ctx.build_uq_star().unwrap();
    let i = |x: i64| CycScalar::from_int(3, x);
    let g = SLMatrix::new(3, vec![vec![i(2), i(1)], vec![i(3), i(2)]]).unwrap();
    (ctx, h, g)
}

#[cfg(feature = "parallel")]
fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let label = format!("pool-{}", default.current_num_threads());
    vec![
        (
            "sequential".into(),
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap(),
        ),
        (label, default),
    ]
}

fn on_pools(c: &mut Criterion, name: &str, mut f: impl FnMut() + Send) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| pool.install(&mut f))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function(BenchmarkId::from_parameter("sequential"), |b| {
        b.iter(&mut f)
    });
    group.finish();
}

fn benches(c: &mut Criterion) {
    let (ctx, h, g) = setup();
    let t = ctx.build_t_g(&g, &h).unwrap();
    on_pools(c, "kappa_rank_T_g", || {
        let cert = certify_galois(&t, Side::Right).unwrap();
        assert_eq!(cert.kappa_rank, 729);
    });
    on_pools(c, "build_u_q_star", || {
        assert_eq!(ctx.build_uq_star().unwrap().alg.dim(), 27);
    });
    on_pools(c, "build_T_g", || {
        ctx.build_t_g(&g, &h).unwrap();
    });
}

criterion_group!(elimination, benches);
criterion_main!(elimination);
