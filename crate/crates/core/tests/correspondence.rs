//! Round trips between semilinear maps and the ray maps they induce.

use orthoset_lab::correspondence::{
    check_tau, induce, partial_wigner, piziak_lambda, scalar_ratio, transport_linear, transport_unitary,
    wigner_reconstruct,
};
use orthoset_lab::hermspace::{generalized_inverse, HermitianSpace};
use orthoset_lab::orthoset::{ProbeSet, ProbeSpec};
use orthoset_lab::par::Execution;
use orthoset_lab::random;
use orthoset_lab::starfields::{GaussianRational, Rational, RationalQuaternion, SfieldMorphism, StarField};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), TestCaseError>;

fn probes<F: StarField>(h: &HermitianSpace<F>, seed: u64) -> ProbeSet<F> {
    ProbeSet::generate(h, ProbeSpec::new(seed, 24))
}

fn wigner<F: StarField>(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h: HermitianSpace<F> = random::space(3, &mut rng);
    let phi0 = random::quasiunitary(&h, &mut rng);
    let (p1, p2) = (probes(&h, seed), probes(phi0.codomain(), seed));
    let w = wigner_reconstruct(&induce(&phi0), &induce(&phi0.inverse().unwrap()), &p1, &p2, Execution::default())
        .unwrap();
    prop_assert!(scalar_ratio(w.map(), &phi0).unwrap().is_some());
    let lambda = piziak_lambda(&phi0, &p1, Execution::default()).unwrap();
    prop_assert_eq!(lambda.conj(), lambda);
    Ok(())
}

fn transports<F: StarField>(seed: u64, n: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h: HermitianSpace<F> = random::space(n, &mut rng);
    let phi = random::quasiunitary(&h, &mut rng);
    let p = probes(phi.codomain(), seed);
    let linear = transport_linear(&phi).unwrap();
    prop_assert!(linear.composed.is_linear());
    prop_assert!(check_tau(&linear, &p, Execution::default()).passed());
    let unitary = transport_unitary(&phi).unwrap();
    prop_assert_eq!(
        unitary.composed.is_quasiunitary().unwrap(),
        Some((SfieldMorphism::Identity, F::one()))
    );
    prop_assert!(check_tau(&unitary, &p, Execution::default()).passed());
    Ok(())
}

fn partial<F: StarField>(seed: u64, n: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h: HermitianSpace<F> = random::space(n, &mut rng);
    let d = random::partial_isometry(&h, 3, false, &mut rng);
    let adj = d.map.adjoint_linear().unwrap();
    prop_assert_eq!(generalized_inverse(&d).unwrap(), adj.clone());
    let (p1, p2) = (probes(&h, seed), probes(d.map.codomain(), seed));
    let w = partial_wigner(&induce(&d.map), &induce(&adj), &p1, &p2, Execution::default()).unwrap();
    prop_assert_eq!(&w.decomposition.a.subspace, &d.s1);
    prop_assert_eq!(&w.decomposition.b.subspace, &d.s2);
    prop_assert!(scalar_ratio(&w.descriptor.map, &d.map).unwrap().is_some());
    Ok(())
}

macro_rules! all_sfields {
    ($f:ident($($arg:expr),*)) => {{
        $f::<Rational>($($arg),*)?;
        $f::<GaussianRational>($($arg),*)?;
        $f::<RationalQuaternion>($($arg),*)?;
    }};
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn wigner_recovers_quasiunitaries_up_to_scalars(seed in any::<u64>()) {
        all_sfields!(wigner(seed));
    }

    #[test]
    fn transports_are_linear_and_unitary(seed in any::<u64>(), n in 1usize..=4) {
        all_sfields!(transports(seed, n));
    }

    #[test]
    fn partial_isometries_decompose_and_reconstruct(seed in any::<u64>(), n in 3usize..=5) {
        all_sfields!(partial(seed, n));
    }
}
