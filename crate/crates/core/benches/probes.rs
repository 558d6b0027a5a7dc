use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orthoset_lab::correspondence::induce;
use orthoset_lab::hermspace::HermitianSpace;
use orthoset_lab::orthoset::{check_axioms, verify_adjoint_pair, ProbeSet, ProbeSpec};
use orthoset_lab::par::Execution;
use orthoset_lab::random;
use orthoset_lab::starfields::{GaussianRational, RationalQuaternion, StarField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    #[cfg(feature = "parallel")]
    m.push(("parallel", Execution::Parallel));
    m
}

fn adjoint_pair<F: StarField>(c: &mut Criterion, name: &str) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h: HermitianSpace<F> = random::space(4, &mut rng);
    let phi = random::linear_map(&h, &h, &mut rng);
    let (f, g) = (induce(&phi), induce(&phi.adjoint_linear().unwrap()));
    let p = ProbeSet::generate(&h, ProbeSpec::new(1, 256));
    // warm the memo tables so only the pairing is measured
    let _ = verify_adjoint_pair(&f, &g, &p, &p, Execution::Sequential);
    let mut group = c.benchmark_group(format!("adjoint_pair/{name}"));
    for (mode, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(mode), &exec, |b, &exec| {
            b.iter(|| verify_adjoint_pair(&f, &g, &p, &p, exec))
        });
    }
    group.finish();
}

fn axioms<F: StarField>(c: &mut Criterion, name: &str) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h: HermitianSpace<F> = random::space(5, &mut rng);
    let p = ProbeSet::generate(&h, ProbeSpec::new(2, 256));
    let mut group = c.benchmark_group(format!("axioms/{name}"));
    for (mode, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(mode), &exec, |b, &exec| {
            b.iter(|| check_axioms(&h, &p, exec))
        });
    }
    group.finish();
}

fn probes(c: &mut Criterion) {
    adjoint_pair::<GaussianRational>(c, "Qi");
    adjoint_pair::<RationalQuaternion>(c, "HQ");
    axioms::<GaussianRational>(c, "Qi");
    axioms::<RationalQuaternion>(c, "HQ");
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = probes
}
criterion_main!(benches);
