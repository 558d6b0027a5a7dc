//! Integer quaternions for the hot paths. Every supported scalar embeds in
//! the rational quaternions, and multiplying a whole row by a positive
//! rational is a central rescaling that changes neither its ray nor whether
//! a pairing vanishes. Rows are therefore cleared of denominators once and
//! combined without any gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::starfields::{Rational, SfieldMorphism, StarField};

pub(crate) type BigQuat = [BigInt; 4];

pub(crate) fn is_zero(q: &BigQuat) -> bool {
    q.iter().all(Zero::is_zero)
}

pub(crate) fn mul(a: &BigQuat, b: &BigQuat) -> BigQuat {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

pub(crate) fn conj(a: &BigQuat) -> BigQuat {
    [a[0].clone(), -&a[1], -&a[2], -&a[3]]
}

fn add_assign(acc: &mut BigQuat, t: BigQuat) {
    for (s, x) in acc.iter_mut().zip(t) {
        *s += x;
    }
}

/// `c·row` with integer entries for the least positive rational `c`.
pub(crate) fn integerize<F: StarField>(row: &[F]) -> Vec<BigQuat> {
    integerize_rows(std::slice::from_ref(&row.to_vec())).remove(0)
}

/// `c·rows` with one common `c`, so combinations of the rows keep their ray.
pub(crate) fn integerize_rows<F: StarField>(rows: &[Vec<F>]) -> Vec<Vec<BigQuat>> {
    let parts: Vec<Vec<[Rational; 4]>> = rows.iter().map(|r| r.iter().map(F::embed).collect()).collect();
    let mut lcm = BigInt::one();
    for x in parts.iter().flatten().flatten() {
        if !x.denom().is_one() && !(&lcm % x.denom()).is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let clear = |x: Rational| {
        if x.denom() == &lcm {
            x.numer().clone()
        } else {
            x.numer() * (&lcm / x.denom())
        }
    };
    parts
        .into_iter()
        .map(|r| r.into_iter().map(|q| q.map(clear)).collect())
        .collect()
}

/// A morphism acting on integer quaternions up to a positive central factor:
/// `inner(q)` becomes `x ↦ Q x Q*` for an integer multiple `Q` of `q`.
#[derive(Clone, Debug)]
pub(crate) enum IntMorphism {
    Identity,
    Conjugation,
    Inner(BigQuat),
}

impl IntMorphism {
    pub fn new(m: &SfieldMorphism) -> Self {
        match m {
            SfieldMorphism::Identity => IntMorphism::Identity,
            SfieldMorphism::Conjugation => IntMorphism::Conjugation,
            SfieldMorphism::Inner(q) => {
                let q = integerize(std::slice::from_ref(q)).remove(0);
                IntMorphism::Inner(q)
            }
        }
    }

    pub fn apply(&self, x: &BigQuat) -> BigQuat {
        match self {
            IntMorphism::Identity => x.clone(),
            IntMorphism::Conjugation => conj(x),
            IntMorphism::Inner(q) => mul(&mul(q, x), &conj(q)),
        }
    }
}

/// `Σ σ(u_i)·rows_i`, up to a positive central factor.
pub(crate) fn combine(sigma: &IntMorphism, u: &[BigQuat], rows: &[Vec<BigQuat>], n: usize) -> Vec<BigQuat> {
    let mut out: Vec<BigQuat> = vec![Default::default(); n];
    for (a, row) in u.iter().zip(rows) {
        if is_zero(a) {
            continue;
        }
        let a = sigma.apply(a);
        for (o, r) in out.iter_mut().zip(row) {
            if !is_zero(r) {
                add_assign(o, mul(&a, r));
            }
        }
    }
    out
}

/// `w` divided by the gcd of all its integer parts, which keeps its ray.
pub(crate) fn primitive(mut w: Vec<BigQuat>) -> Vec<BigQuat> {
    let mut g = BigInt::zero();
    for x in w.iter().flatten() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return w;
            }
        }
    }
    if !g.is_zero() {
        for x in w.iter_mut().flatten() {
            *x /= &g;
        }
    }
    w
}

/// The representative `w_k⁻¹·w` with first nonzero coordinate 1, or `None`
/// for the zero vector. `w_k⁻¹ = w_k*/N(w_k)`, so each part is one
/// reduction.
pub(crate) fn normalize<F: StarField>(w: &[BigQuat]) -> Option<Vec<F>> {
    let k = w.iter().position(|q| !is_zero(q))?;
    let lead = conj(&w[k]);
    let norm: BigInt = w[k].iter().map(|x| x * x).sum();
    Some(
        w.iter()
            .enumerate()
            .map(|(j, q)| {
                if j < k {
                    F::zero()
                } else if j == k {
                    F::one()
                } else if is_zero(q) {
                    F::zero()
                } else {
                    F::from_embed(mul(&lead, q).map(|x| Rational::new(x, norm.clone())))
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermspace::Vector;
    use crate::starfields::RationalQuaternion;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn integer_combination_matches_rational_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let q: RationalQuaternion = crate::random::nonzero_scalar(&mut rng, 3);
            let sigma = SfieldMorphism::inner(q);
            let u: Vec<RationalQuaternion> = (0..3).map(|_| RationalQuaternion::random(&mut rng, 4)).collect();
            let rows: Vec<Vec<RationalQuaternion>> =
                (0..3).map(|_| (0..2).map(|_| RationalQuaternion::random(&mut rng, 4)).collect()).collect();
            // oracle: the same combination in rational arithmetic, then normalized
            let coeffs: Vec<_> = u.iter().map(|a| a.apply_morphism(&sigma)).collect();
            let exact = Vector(crate::linalg::combine(&coeffs, &rows, 2));
            let want = exact.leading().map(|i| exact.scale(&exact.0[i].inv().unwrap()).0);
            let int_rows = integerize_rows(&rows);
            let w = combine(&IntMorphism::new(&sigma), &integerize(&u), &int_rows, 2);
            assert_eq!(normalize::<RationalQuaternion>(&w), want);
        }
    }
}
