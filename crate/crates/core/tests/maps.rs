//! Properties of adjoints, induced maps and the scalar fields themselves.

use orthoset_lab::correspondence::{induce, scalar_ratio};
use orthoset_lab::hermspace::{HermitianSpace, SemilinearMap};
use orthoset_lab::orthoset::{continuity_witness, ray_map_rank, verify_adjoint_pair, ProbeSet, ProbeSpec, Ray};
use orthoset_lab::par::Execution;
use orthoset_lab::random;
use orthoset_lab::starfields::{GaussianRational, Rational, RationalQuaternion, StarField};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), TestCaseError>;

fn scalar_laws<F: StarField>(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, c): (F, F, F) = (F::random(&mut rng, 9), F::random(&mut rng, 9), F::random(&mut rng, 9));
    prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
    prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
    prop_assert_eq!(a.mul_ref(&b).conj(), b.conj().mul_ref(&a.conj()));
    prop_assert_eq!(a.conj().conj(), a.clone());
    prop_assert_eq!(F::from_embed(a.embed()), a.clone());
    if !a.is_zero() {
        prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        prop_assert!(a.inv().unwrap().mul_ref(&a).is_one());
    }
    Ok(())
}

fn adjoints<F: StarField>(seed: u64, n1: usize, n2: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h1, h2): (HermitianSpace<F>, HermitianSpace<F>) = (random::space(n1, &mut rng), random::space(n2, &mut rng));
    let phi = random::linear_map(&h1, &h2, &mut rng);
    let adj = phi.adjoint_linear().unwrap();
    for u in h1.basis() {
        for v in h2.basis() {
            prop_assert_eq!(h2.form(&phi.apply(&u), &v), h1.form(&u, &adj.apply(&v)));
        }
    }
    prop_assert_eq!(adj.adjoint_linear().unwrap(), phi.clone());
    prop_assert_eq!(adj.rank(), phi.rank());

    let spec = ProbeSpec::new(seed, 24);
    let (p1, p2) = (ProbeSet::generate(&h1, spec), ProbeSet::generate(&h2, spec));
    let (f, g) = (induce(&phi), induce(&adj));
    prop_assert!(verify_adjoint_pair(&f, &g, &p1, &p2, Execution::default()).passed());
    prop_assert_eq!(ray_map_rank(&f, &p1), ray_map_rank(&g, &p2));
    Ok(())
}

fn functoriality<F: StarField>(seed: u64, n: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h: HermitianSpace<F> = random::space(n, &mut rng);
    let phi = random::quasiunitary(&h, &mut rng);
    let psi = random::linear_map(phi.codomain(), &h, &mut rng);
    let composed = induce(&psi.compose(&phi).unwrap());
    let (f, g) = (induce(&phi), induce(&psi));
    let id = induce(&SemilinearMap::identity(h.clone()));
    let probes = ProbeSet::generate(&h, ProbeSpec::new(seed, 16));
    for x in &probes.rays {
        prop_assert_eq!(composed.apply(x), g.apply(&f.apply(x)));
        prop_assert_eq!(&id.apply(x), x);
    }
    // P(κφ) = P(φ) for a nonzero scalar κ
    let kappa: F = random::nonzero_scalar(&mut rng, 5);
    let scaled = phi.scale_left(&kappa).unwrap();
    if phi.rank() >= 2 {
        prop_assert_eq!(scalar_ratio(&scaled, &phi).unwrap(), Some(kappa));
    }
    for x in &probes.rays {
        prop_assert_eq!(induce(&scaled).apply(x), f.apply(x));
    }
    Ok(())
}

fn continuity<F: StarField>(seed: u64, n: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h1, h2): (HermitianSpace<F>, HermitianSpace<F>) = (random::space(n, &mut rng), random::space(n, &mut rng));
    let f = induce(&random::linear_map(&h1, &h2, &mut rng));
    let probes = ProbeSet::generate(&h1, ProbeSpec::new(seed, 24));
    let x1 = Ray::of(&h1, &random::nonzero_vector(n, &mut rng)).unwrap();
    let x2 = Ray::of(&h1, &random::nonzero_vector(n, &mut rng)).unwrap();
    prop_assert_eq!(continuity_witness(&f, &x1, &x2, &probes).unwrap(), None);
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
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalars_form_involutive_skew_fields(seed in any::<u64>()) {
        all_sfields!(scalar_laws(seed));
    }

    #[test]
    fn adjoints_are_involutive_and_keep_rank(seed in any::<u64>(), n1 in 1usize..=4, n2 in 1usize..=4) {
        all_sfields!(adjoints(seed, n1, n2));
    }

    #[test]
    fn induction_is_functorial(seed in any::<u64>(), n in 1usize..=4) {
        all_sfields!(functoriality(seed, n));
    }

    #[test]
    fn induced_maps_preserve_spans(seed in any::<u64>(), n in 2usize..=4) {
        all_sfields!(continuity(seed, n));
    }
}
