use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hermspace::SemilinearMap;
use crate::orthoset::{PerpTable, ProbeSet, RayMap};
use crate::par::{self, Execution};
use crate::starfields::{StarField, SfieldMorphism};

/// `P(φ)`.
pub fn induce<F: StarField>(phi: &SemilinearMap<F>) -> RayMap<F> {
    RayMap::induced(phi.clone())
}

/// `κ` with `ψ = κφ`, if there is one.
pub fn scalar_ratio<F: StarField>(psi: &SemilinearMap<F>, phi: &SemilinearMap<F>) -> Result<Option<F>> {
    if !psi.domain().same_as(phi.domain()) || !psi.codomain().same_as(phi.codomain()) {
        return Err(Error::input("maps have different domains or codomains"));
    }
    if phi.rank() < 2 {
        return Err(Error::Precondition(
            "scalar ratio is only unique for maps of rank at least 2".into(),
        ));
    }
    let (pi, p) = phi
        .images()
        .iter()
        .enumerate()
        .find_map(|(i, v)| v.leading().map(|p| (i, p)))
        .expect("rank is positive");
    let kappa = psi.images()[pi].0[p].mul_ref(&phi.images()[pi].0[p].inv()?);
    if kappa.is_zero() {
        return Ok(None);
    }
    let same_images = psi
        .images()
        .iter()
        .zip(phi.images())
        .all(|(a, b)| *a == b.scale(&kappa));
    let same_sigma = F::inner_morphism(&kappa)?.compose(phi.sigma()).ok().as_ref() == Some(psi.sigma());
    Ok((same_images && same_sigma).then_some(kappa))
}

/// First probe pair `x ⊥ y` with `f(x) ̸⊥ f(y)`.
pub(crate) fn orthogonality_violation<F: StarField>(
    f: &RayMap<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> Option<serde_json::Value> {
    let xs = &probes.rays;
    let fx = par::map(exec, xs, |x| f.apply(x));
    let before = PerpTable::new(f.domain(), xs, exec);
    let after = PerpTable::new(f.codomain(), &fx, exec);
    par::find_first(exec, xs.len(), |i| {
        (0..xs.len()).find_map(|j| {
            (before.perp(i, j) && !after.perp(i, j)).then(|| {
                json!({
                    "x": xs[i].rep_json(),
                    "y": xs[j].rep_json(),
                    "f(x)": fx[i].rep_json(),
                    "f(y)": fx[j].rep_json(),
                })
            })
        })
    })
}

/// The unique `λ` with `⟨φu,φv⟩₂ = ⟨u,v⟩₁^σ λ` for an orthogonality
/// preserving semilinear map. For each basis vector `v = eₘ` the proof's `w`
/// with `⟨w,v⟩ = 1` is a rescaled basis vector `eᵢ` with `Gᵢₘ ≠ 0`.
pub fn piziak_lambda<F: StarField>(
    phi: &SemilinearMap<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> Result<F> {
    let (h1, h2) = (phi.domain(), phi.codomain());
    let n = h1.dim();
    if n < 2 {
        return Err(Error::Precondition("piziak_lambda needs a domain of dimension at least 2".into()));
    }
    if let Some(witness) = orthogonality_violation(&RayMap::induced(phi.clone()), probes, exec) {
        return Err(Error::NotOrthogonalityPreserving { witness });
    }
    let sigma = phi.sigma();
    let g = h1.gram();
    let images = phi.images();
    let lambdas = (0..n)
        .map(|m| {
            let i = (0..n).find(|&i| !g[i][m].is_zero()).expect("anisotropic gram");
            Ok(g[i][m]
                .inv()?
                .apply_morphism(sigma)
                .mul_ref(&h2.form(&images[i], &images[m])))
        })
        .collect::<Result<Vec<F>>>()?;
    let lambda = lambdas[0].clone();
    if let Some(m) = lambdas.iter().position(|l| *l != lambda) {
        return Err(Error::Inconsistent(format!(
            "λ from e0 is {} but from e{m} it is {}",
            lambda.to_json(),
            lambdas[m].to_json()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = h2.form(&images[i], &images[j]);
            let rhs = g[i][j].apply_morphism(sigma).mul_ref(&lambda);
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "⟨φe{i},φe{j}⟩ differs from ⟨e{i},e{j}⟩^σ λ"
                )));
            }
        }
    }
    if phi.is_bijective() && lambda.conj() != lambda {
        return Err(Error::Inconsistent("λ is not self-adjoint".into()));
    }
    Ok(lambda)
}

/// `σ` is one of `id`, conjugation or an inner automorphism; returns the one
/// sending each generator to the given image, if any.
pub(crate) fn classify_morphism<F: StarField>(generator_images: &[F]) -> Option<SfieldMorphism> {
    let gens = F::generators();
    let mut candidates = vec![SfieldMorphism::Identity, SfieldMorphism::Conjugation];
    if F::admits(&SfieldMorphism::inner(crate::starfields::RationalQuaternion::i())) {
        if let Some(q) = intertwiner(&gens, generator_images) {
            candidates.push(SfieldMorphism::inner(q));
        }
    }
    candidates.into_iter().find(|m| {
        F::admits(m)
            && gens
                .iter()
                .zip(generator_images)
                .all(|(g, img)| g.apply_morphism(m) == *img)
    })
}

/// A nonzero quaternion `q` with `q·g = g'·q` for every pair, solved as a
/// rational linear system in the four coordinates of `q`.
fn intertwiner<F: StarField>(gens: &[F], images: &[F]) -> Option<crate::starfields::RationalQuaternion> {
    use crate::starfields::{Rational, RationalQuaternion};
    let quat = |e: [Rational; 4]| {
        let [a, b, c, d] = e;
        RationalQuaternion::new(a, b, c, d)
    };
    let units = [
        RationalQuaternion::one(),
        RationalQuaternion::i(),
        RationalQuaternion::j(),
        RationalQuaternion::k(),
    ];
    let rows: Vec<Vec<Rational>> = units
        .iter()
        .map(|b| {
            gens.iter()
                .zip(images)
                .flat_map(|(g, img)| {
                    let (g, img) = (quat(g.embed()), quat(img.embed()));
                    let d = b.mul_ref(&g) - img.mul_ref(b);
                    d.embed().into_iter()
                })
                .collect()
        })
        .collect();
    let ncols = 4 * gens.len();
    let kernel = crate::linalg::left_kernel(&rows, ncols);
    let c = kernel.into_iter().next()?;
    let [a, b, cc, d] = [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()];
    Some(RationalQuaternion::new(a, b, cc, d))
}
