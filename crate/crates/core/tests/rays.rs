//! Properties of rays, orthogonality and the closure `A ↦ A⊥⊥`.

use orthoset_lab::hermspace::{HermitianSpace, Subspace, Vector};
use orthoset_lab::orthoset::{
    dacey_witness, frechet_separator, is_dacey_witness, is_linearity_witness, linearity_witness, perp_closure,
    ray_perp, Ray,
};
use orthoset_lab::random;
use orthoset_lab::starfields::{GaussianRational, Rational, RationalQuaternion, StarField};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), TestCaseError>;

fn setup<F: StarField>(seed: u64, n: usize) -> (ChaCha8Rng, HermitianSpace<F>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random::space(n, &mut rng);
    (rng, h)
}

fn rays<F: StarField>(h: &HermitianSpace<F>, k: usize, rng: &mut ChaCha8Rng) -> Vec<Ray<F>> {
    (0..k).map(|_| Ray::of(h, &random::vector(h.dim(), rng)).unwrap()).collect()
}

fn scaling<F: StarField>(seed: u64, n: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    let u = random::nonzero_vector(n, &mut rng);
    let a: F = random::nonzero_scalar(&mut rng, 9);
    let x = Ray::of(&h, &u).unwrap();
    prop_assert_eq!(&x, &Ray::of(&h, &u.scale(&a)).unwrap());
    let rep = x.rep().unwrap();
    let lead = rep.leading().unwrap();
    prop_assert!(rep.coords()[lead].is_one());
    prop_assert!(Ray::of(&h, &Vector::zeros(n)).unwrap().is_zero());
    Ok(())
}

fn orthogonality<F: StarField>(seed: u64, n: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    let xs = rays(&h, 6, &mut rng);
    let zero = Ray::zero(&h);
    for x in &xs {
        prop_assert!(ray_perp(x, &zero).unwrap());
        prop_assert_eq!(ray_perp(x, x).unwrap(), x.is_zero());
        for y in &xs {
            prop_assert_eq!(ray_perp(x, y).unwrap(), ray_perp(y, x).unwrap());
        }
    }
    Ok(())
}

fn closure<F: StarField>(seed: u64, n: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    let a = rays(&h, 2, &mut rng);
    let b: Vec<Ray<F>> = a.iter().cloned().chain(rays(&h, 2, &mut rng)).collect();
    let ca = perp_closure(&h, &a).unwrap();
    let cb = perp_closure(&h, &b).unwrap();
    // extensive, monotone, idempotent
    for x in &a {
        prop_assert!(ca.contains(&x.vector()));
    }
    prop_assert!(cb.contains_subspace(&ca));
    let again: Vec<Ray<F>> = ca.basis().iter().map(|v| Ray::of(&h, v).unwrap()).collect();
    prop_assert_eq!(perp_closure(&h, &again).unwrap(), ca.clone());
    // A⊥⊥ is the double orthocomplement
    prop_assert_eq!(ca.orthocomplement().orthocomplement(), ca);
    Ok(())
}

fn dacey<F: StarField>(seed: u64, n: usize, k: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    let s: Subspace<F> = random::subspace(&h, k.min(n), &mut rng);
    let x = Ray::of(&h, &random::nonzero_vector(n, &mut rng)).unwrap();
    let (y, z) = dacey_witness(&s, &x).unwrap();
    prop_assert!(is_dacey_witness(&s, &x, &y, &z).unwrap());
    prop_assert!(s.contains(&y.vector()));
    prop_assert!(s.orthocomplement().contains(&z.vector()));
    Ok(())
}

fn linear_and_frechet<F: StarField>(seed: u64, n: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    let x = Ray::of(&h, &random::nonzero_vector(n, &mut rng)).unwrap();
    let y = Ray::of(&h, &random::nonzero_vector(n, &mut rng)).unwrap();
    if x == y {
        prop_assert!(linearity_witness(&x, &y).is_err());
        return Ok(());
    }
    let z = linearity_witness(&x, &y).unwrap();
    prop_assert!(is_linearity_witness(&x, &y, &z).unwrap());
    prop_assert!(ray_perp(&x, &y).unwrap() != ray_perp(&x, &z).unwrap());
    let w = frechet_separator(&x, &y).unwrap();
    prop_assert!(ray_perp(&w, &x).unwrap() && !ray_perp(&w, &y).unwrap());
    Ok(())
}

fn json_round_trip<F: StarField>(seed: u64, n: usize) -> Check {
    let (mut rng, h) = setup::<F>(seed, n);
    for x in rays(&h, 3, &mut rng) {
        let back = Ray::<F>::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back, x);
    }
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
    fn rays_ignore_left_scalars(seed in any::<u64>(), n in 1usize..=5) {
        all_sfields!(scaling(seed, n));
    }

    #[test]
    fn orthogonality_is_symmetric_and_anisotropic(seed in any::<u64>(), n in 1usize..=5) {
        all_sfields!(orthogonality(seed, n));
    }

    #[test]
    fn perp_closure_is_a_closure_operator(seed in any::<u64>(), n in 2usize..=5) {
        all_sfields!(closure(seed, n));
    }

    #[test]
    fn dacey_witnesses_verify(seed in any::<u64>(), n in 2usize..=5, k in 1usize..=4) {
        all_sfields!(dacey(seed, n, k));
    }

    #[test]
    fn linearity_and_frechet_witnesses_verify(seed in any::<u64>(), n in 2usize..=5) {
        all_sfields!(linear_and_frechet(seed, n));
    }

    #[test]
    fn rays_round_trip_through_json(seed in any::<u64>(), n in 1usize..=4) {
        all_sfields!(json_round_trip(seed, n));
    }
}
