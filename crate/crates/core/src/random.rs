//! Seeded random instances: spaces, subspaces and maps of the kinds the
//! verification suites quantify over.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::hermspace::{
    make_partial_isometry, HermitianSpace, PartialIsometryDescriptor, SemilinearMap, Subspace,
    SubspaceMap, Vector,
};
use crate::linalg;
use crate::starfields::{Rational, RationalQuaternion, SfieldMorphism, SfieldTag, StarField};

/// Bound for numerators and denominators of generated entries.
pub const BOUND: i64 = 3;

pub fn nonzero_scalar<F: StarField, R: Rng + ?Sized>(rng: &mut R, bound: i64) -> F {
    loop {
        let a = F::random(rng, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn vector<F: StarField, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector<F> {
    Vector((0..n).map(|_| F::random(rng, BOUND)).collect())
}

pub fn nonzero_vector<F: StarField, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector<F> {
    loop {
        let v = vector(n, rng);
        if !v.is_zero() {
            return v;
        }
    }
}

fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.random_range(1..=5i64)),
        BigInt::from(rng.random_range(1..=3i64)),
    )
}

/// A certified space of dimension `n`. Over Q and Qi the gram is `L D L*`
/// with `L` unit lower triangular and `D` positive; over HQ the certificate
/// only admits positive diagonals.
pub fn space<F: StarField, R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianSpace<F> {
    match rng.random_range(0..3) {
        0 => HermitianSpace::standard(n),
        _ if F::TAG == SfieldTag::HQ => {
            let d: Vec<Rational> = (0..n).map(|_| positive_rational(rng)).collect();
            HermitianSpace::diagonal(&d).expect("positive diagonal")
        }
        _ => {
            let l: Vec<Vec<F>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less if rng.random_range(0..2) == 0 => F::random(rng, 2),
                            std::cmp::Ordering::Equal => F::one(),
                            _ => F::zero(),
                        })
                        .collect()
                })
                .collect();
            let d: Vec<F> = (0..n).map(|_| F::from_rational(positive_rational(rng))).collect();
            let ld: Vec<Vec<F>> = l
                .iter()
                .map(|row| row.iter().zip(&d).map(|(a, x)| a.mul_ref(x)).collect())
                .collect();
            let lstar: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|j| l[j][i].conj()).collect()).collect();
            HermitianSpace::new(linalg::mat_mul(&ld, &lstar, n, n)).expect("L D L* is positive definite")
        }
    }
}

pub fn subspace<F: StarField, R: Rng + ?Sized>(h: &HermitianSpace<F>, k: usize, rng: &mut R) -> Subspace<F> {
    loop {
        let vs = (0..k).map(|_| vector(h.dim(), rng)).collect();
        let s = Subspace::new(h.clone(), vs).expect("vectors fit the space");
        if s.dim() == k {
            return s;
        }
    }
}

pub fn linear_map<F: StarField, R: Rng + ?Sized>(
    h1: &HermitianSpace<F>,
    h2: &HermitianSpace<F>,
    rng: &mut R,
) -> SemilinearMap<F> {
    let images = (0..h1.dim()).map(|_| vector(h2.dim(), rng)).collect();
    SemilinearMap::linear(h1.clone(), h2.clone(), images).expect("images fit the codomain")
}

pub fn invertible_linear_map<F: StarField, R: Rng + ?Sized>(h: &HermitianSpace<F>, rng: &mut R) -> SemilinearMap<F> {
    loop {
        let m = linear_map(h, h, rng);
        if m.is_bijective() {
            return m;
        }
    }
}

/// The reflection `x ↦ x − 2⟨x,u⟩⟨u,u⟩⁻¹ u`, unitary for any gram.
pub fn reflection<F: StarField>(h: &HermitianSpace<F>, u: &Vector<F>) -> SemilinearMap<F> {
    let c = F::from_rational(Rational::from_integer(2.into()))
        .mul_ref(&h.norm(u).inv().expect("u is nonzero"));
    let images = h
        .basis()
        .iter()
        .map(|e| e.sub(&u.scale(&h.form(e, u).mul_ref(&c))))
        .collect();
    SemilinearMap::linear(h.clone(), h.clone(), images).expect("square map")
}

/// A product of `count` random reflections.
pub fn unitary<F: StarField, R: Rng + ?Sized>(h: &HermitianSpace<F>, count: usize, rng: &mut R) -> SemilinearMap<F> {
    let mut u = SemilinearMap::identity(h.clone());
    for _ in 0..count {
        let r = reflection(h, &nonzero_vector(h.dim(), rng));
        u = r.compose(&u).expect("same space");
    }
    u
}

/// A random morphism of `F`: the identity, conjugation on Qi, or an inner
/// automorphism on HQ.
pub fn morphism<F: StarField, R: Rng + ?Sized>(rng: &mut R) -> SfieldMorphism {
    match F::TAG {
        SfieldTag::Q => SfieldMorphism::Identity,
        SfieldTag::Qi => {
            if rng.random_range(0..2) == 0 {
                SfieldMorphism::Identity
            } else {
                SfieldMorphism::Conjugation
            }
        }
        SfieldTag::HQ => SfieldMorphism::inner(nonzero_scalar::<RationalQuaternion, R>(rng, 2)),
    }
}

/// `H(σ(G))`, the target of the coordinatewise twist by `σ`.
pub fn twisted_space<F: StarField>(h: &HermitianSpace<F>, sigma: &SfieldMorphism) -> HermitianSpace<F> {
    let gram = h
        .gram()
        .iter()
        .map(|row| row.iter().map(|g| g.apply_morphism(sigma)).collect())
        .collect();
    HermitianSpace::new(gram).expect("twisting keeps the certificate")
}

/// `φ₀ = L_κ ∘ T_σ ∘ U : H → H(σ(G))` with `U` unitary, `T_σ` the
/// coordinatewise twist and `L_κ` left multiplication of coordinates by `κ`.
/// Its morphism is `inner(κ)∘σ` and its scalar `N(κ)`.
pub fn quasiunitary<F: StarField, R: Rng + ?Sized>(h: &HermitianSpace<F>, rng: &mut R) -> SemilinearMap<F> {
    let sigma = morphism::<F, R>(rng);
    let u = unitary(h, 2, rng);
    let target = twisted_space(h, &sigma);
    let twist = SemilinearMap::new(h.clone(), target.clone(), sigma, target.basis()).expect("admitted morphism");
    let kappa: F = nonzero_scalar(rng, BOUND);
    twist
        .compose(&u)
        .and_then(|m| m.scale_left(&kappa))
        .expect("composable")
}

/// A partial isometry with a core of dimension `k`: a reflection of `H`
/// restricted to the span of `k` random basis vectors. With `quasi` the
/// reflection is replaced by a quasiunitary map into a twisted copy of `H`.
/// Coordinate subspaces keep the entries small.
pub fn partial_isometry<F: StarField, R: Rng + ?Sized>(
    h: &HermitianSpace<F>,
    k: usize,
    quasi: bool,
    rng: &mut R,
) -> PartialIsometryDescriptor<F> {
    let mut picked: Vec<usize> = (0..h.dim()).collect();
    picked.shuffle(rng);
    picked.truncate(k);
    picked.sort_unstable();
    let basis = h.basis();
    let s1 = Subspace::new(h.clone(), picked.iter().map(|&i| basis[i].clone()).collect()).expect("basis vectors");
    let u = if quasi { quasiunitary(h, rng) } else { unitary(h, 1, rng) };
    let images: Vec<Vector<F>> = s1.basis().iter().map(|b| u.apply(b)).collect();
    let s2 = Subspace::new(u.codomain().clone(), images.clone()).expect("images fit");
    let core = SubspaceMap {
        sigma: u.sigma().clone(),
        images,
    };
    make_partial_isometry(&s1, &s2, &core).expect("restriction of a quasiunitary map")
}
