use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hermspace::{
    make_partial_isometry, HermitianSpace, PartialIsometryDescriptor, SemilinearMap, Subspace,
    SubspaceMap,
};
use crate::orthoset::{PerpTable, ProbeSet, Ray};
use crate::par::{self, Execution};
use crate::report::ReportRecord;
use crate::starfields::{SfieldMorphism, StarField};

/// `H₂'`: the codomain with scalars acting through `σ` and the form rescaled
/// by `λ⁻¹`, together with `τ : H₂ → H₂'` (identity on vectors, `σ⁻¹` on
/// coordinates) and `τ∘φ`.
#[derive(Clone, Debug)]
pub struct TransportResult<F: StarField> {
    pub new_space: HermitianSpace<F>,
    pub tau: SemilinearMap<F>,
    pub composed: SemilinearMap<F>,
    pub sigma: SfieldMorphism,
    pub lambda: F,
}

impl<F: StarField> TransportResult<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.new_space.to_json(),
            "tau": self.tau.to_json(),
            "composed": self.composed.to_json(),
            "sigma": self.sigma.to_json(),
            "lambda": self.lambda.to_json(),
        })
    }
}

/// The involution of `H₂'`: `α ↦ λ' ((α^σ)*)^{σ⁻¹} λ'⁻¹` with `λ' = λ^{σ⁻¹}`.
pub fn transported_involution<F: StarField>(sigma: &SfieldMorphism, lambda: &F, a: &F) -> Result<F> {
    let inv = sigma.inverse();
    let l = lambda.apply_morphism(&inv);
    let twisted = a.apply_morphism(sigma).conj().apply_morphism(&inv);
    Ok(l.mul_ref(&twisted).mul_ref(&l.inv()?))
}

/// Whether the transported involution is the standard one, which is what
/// lets `H₂'` be stored as an ordinary Hermitian space. Both sides are
/// antiautomorphisms fixing the rationals, so generators decide it.
fn involution_is_standard<F: StarField>(sigma: &SfieldMorphism, lambda: &F) -> Result<bool> {
    for g in F::generators() {
        if transported_involution(sigma, lambda, &g)? != g.conj() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn transport_space<F: StarField>(
    h2: &HermitianSpace<F>,
    sigma: &SfieldMorphism,
    lambda: &F,
) -> Result<(HermitianSpace<F>, SemilinearMap<F>)> {
    if !involution_is_standard(sigma, lambda)? {
        return Err(Error::TransportDegeneracy(format!(
            "transported involution for σ = {sigma} is not the standard one"
        )));
    }
    let inv = sigma.inverse();
    let lambda_inv = lambda.inv()?;
    let gram = h2
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| g.mul_ref(&lambda_inv).apply_morphism(&inv))
                .collect()
        })
        .collect();
    let new_space = HermitianSpace::new(gram).map_err(|e| Error::TransportDegeneracy(e.to_string()))?;
    let tau = SemilinearMap::new(h2.clone(), new_space.clone(), inv, new_space.basis())?;
    Ok((new_space, tau))
}

fn finish<F: StarField>(phi: &SemilinearMap<F>, sigma: SfieldMorphism, lambda: F) -> Result<TransportResult<F>> {
    let (new_space, tau) = transport_space(phi.codomain(), &sigma, &lambda)?;
    let composed = tau.compose(phi)?;
    debug_assert!(composed.is_linear());
    Ok(TransportResult {
        new_space,
        tau,
        composed,
        sigma,
        lambda,
    })
}

/// Makes a quasilinear map linear: `G' = σ⁻¹(G)`.
pub fn transport_linear<F: StarField>(phi: &SemilinearMap<F>) -> Result<TransportResult<F>> {
    finish(phi, phi.sigma().clone(), F::one())
}

/// Makes a quasiunitary map unitary: `G' = σ⁻¹(G λ⁻¹)`.
pub fn transport_unitary<F: StarField>(phi: &SemilinearMap<F>) -> Result<TransportResult<F>> {
    let (sigma, lambda) = phi
        .is_quasiunitary()?
        .ok_or_else(|| Error::input("map is not quasiunitary"))?;
    let result = finish(phi, sigma, lambda)?;
    if !result.composed.is_unitary()? {
        return Err(Error::TransportDegeneracy("transported map is not unitary".into()));
    }
    Ok(result)
}

/// Transports a partial quasiisometry into a partial isometry `H₁ → H₂'`.
pub fn transport_partial<F: StarField>(
    d: &PartialIsometryDescriptor<F>,
) -> Result<(TransportResult<F>, PartialIsometryDescriptor<F>)> {
    let result = finish(&d.map, d.core.sigma.clone(), d.lambda.clone())?;
    let inv = d.core.sigma.inverse();
    let s2 = Subspace::new(
        result.new_space.clone(),
        d.s2.basis().iter().map(|v| v.twist(&inv)).collect(),
    )?;
    let core = SubspaceMap {
        sigma: SfieldMorphism::Identity,
        images: d.core.images.iter().map(|v| v.twist(&inv)).collect(),
    };
    let isometry = make_partial_isometry(&d.s1, &s2, &core)?;
    Ok((result, isometry))
}

/// `x ⊥ y ⇔ τx ⊥' τy` over all probe pairs of `H₂`.
pub fn check_tau<F: StarField>(t: &TransportResult<F>, probes: &ProbeSet<F>, exec: Execution) -> ReportRecord {
    let xs = &probes.rays;
    let tx: Vec<Ray<F>> = par::map(exec, xs, |x| match x.rep() {
        None => Ray::zero(&t.new_space),
        Some(u) => Ray::of_unchecked(&t.new_space, &t.tau.apply(u)),
    });
    let before = PerpTable::new(t.tau.domain(), xs, exec);
    let after = PerpTable::new(&t.new_space, &tx, exec);
    let witness = par::find_first(exec, xs.len(), |i| {
        (0..xs.len()).find_map(|j| {
            let (a, b) = (before.perp(i, j), after.perp(i, j));
            (a != b).then(|| json!({ "x": xs[i].rep_json(), "y": xs[j].rep_json(), "x_perp_y": a }))
        })
    });
    ReportRecord::from_witness("transport.tau", witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermspace::{generalized_inverse, Vector};
    use crate::orthoset::ProbeSpec;
    use crate::starfields::{GaussianRational, Rational, RationalQuaternion};
    use num_bigint::BigInt;
    use num_traits::One;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_morphism_changes_nothing() {
        let h = HermitianSpace::<Rational>::standard(2);
        let phi = SemilinearMap::identity(h.clone());
        let t = transport_linear(&phi).unwrap();
        assert_eq!(t.new_space, h);
        assert_eq!(t.composed, phi);
        let u = transport_unitary(&phi).unwrap();
        assert_eq!(u.new_space, h);
    }

    #[test]
    fn doubling_rescales_the_form() {
        let h = HermitianSpace::<Rational>::standard(2);
        let two = SemilinearMap::identity(h.clone()).scale_left(&r(2, 1)).unwrap();
        let t = transport_unitary(&two).unwrap();
        assert_eq!(t.lambda, r(4, 1));
        assert_eq!(t.new_space, HermitianSpace::diagonal(&[r(1, 4), r(1, 4)]).unwrap());
        assert_eq!(t.composed.images(), two.images());
        assert!(t.composed.is_unitary().unwrap());
    }

    #[test]
    fn conjugation_on_gaussian_plane() {
        let h = HermitianSpace::<GaussianRational>::standard(2);
        let phi = SemilinearMap::new(h.clone(), h.clone(), SfieldMorphism::Conjugation, h.basis()).unwrap();
        let t = transport_linear(&phi).unwrap();
        assert_eq!(t.new_space, h);
        assert!(t.composed.is_linear());
        let p = ProbeSet::generate(&h, ProbeSpec::new(3, 40));
        assert!(check_tau(&t, &p, Execution::default()).passed());
    }

    #[test]
    fn quaternion_left_multiplication() {
        let h = HermitianSpace::<RationalQuaternion>::standard(2);
        let q = RationalQuaternion::one() + RationalQuaternion::i();
        let phi = SemilinearMap::identity(h.clone()).scale_left(&q).unwrap();
        let t = transport_unitary(&phi).unwrap();
        assert_eq!(t.sigma, SfieldMorphism::inner(q));
        let half = r(1, 2);
        assert_eq!(t.new_space, HermitianSpace::diagonal(&[half.clone(), half]).unwrap());
        assert!(t.composed.is_unitary().unwrap());
        // oracle: τ∘φ on a basis vector is σ⁻¹((1+i)) e₀ = (1+i) e₀
        let e0 = h.basis_vector(0);
        assert_eq!(t.composed.apply(&e0), phi.apply(&e0).twist(&t.sigma.inverse()));
        for g in RationalQuaternion::generators() {
            assert_eq!(transported_involution(&t.sigma, &t.lambda, &g).unwrap(), g.conj());
        }
        let p = ProbeSet::generate(&h, ProbeSpec::new(5, 40));
        assert!(check_tau(&t, &p, Execution::default()).passed());
    }

    #[test]
    fn transported_partial_isometry_has_adjoint_as_generalized_inverse() {
        let h = HermitianSpace::<RationalQuaternion>::standard(3);
        let q = RationalQuaternion::new(r(1, 1), r(0, 1), r(2, 1), r(0, 1));
        let zero = RationalQuaternion::from_rational(r(0, 1));
        let one = RationalQuaternion::one();
        let s1 = Subspace::new(h.clone(), vec![Vector(vec![one.clone(), zero.clone(), zero.clone()]), Vector(vec![zero.clone(), one.clone(), zero.clone()])]).unwrap();
        let s2 = Subspace::new(h.clone(), vec![Vector(vec![zero.clone(), one.clone(), zero.clone()]), Vector(vec![zero.clone(), zero.clone(), one.clone()])]).unwrap();
        let core = SubspaceMap {
            sigma: SfieldMorphism::inner(q.clone()),
            images: vec![Vector(vec![zero.clone(), q.clone(), zero.clone()]), Vector(vec![zero.clone(), zero.clone(), q.clone()])],
        };
        let d = make_partial_isometry(&s1, &s2, &core).unwrap();
        assert_eq!(d.lambda, RationalQuaternion::from_rational(r(5, 1)));
        assert!(generalized_inverse(&d).is_err());
        let (t, iso) = transport_partial(&d).unwrap();
        assert!(iso.is_isometry());
        assert_eq!(iso.map, t.composed);
        assert_eq!(generalized_inverse(&iso).unwrap(), t.composed.adjoint_linear().unwrap());
    }
}
