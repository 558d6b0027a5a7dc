use serde_json::{json, Value};

use super::space::HermitianSpace;
use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::starfields::{SfieldMorphism, StarField};

/// A σ-semilinear map `φ(Σ αᵢeᵢ) = Σ αᵢ^σ · images[i]`, stored by the images
/// of the domain's standard basis. The twist only ever touches input
/// coefficients, so there is no left/right ambiguity over HQ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap<F: StarField> {
    domain: HermitianSpace<F>,
    codomain: HermitianSpace<F>,
    sigma: SfieldMorphism,
    images: Vec<Vector<F>>,
}

impl<F: StarField> SemilinearMap<F> {
    pub fn new(
        domain: HermitianSpace<F>,
        codomain: HermitianSpace<F>,
        sigma: SfieldMorphism,
        images: Vec<Vector<F>>,
    ) -> Result<Self> {
        F::check_morphism(&sigma)?;
        if images.len() != domain.dim() {
            return Err(Error::input(format!(
                "expected {} basis images, found {}",
                domain.dim(),
                images.len()
            )));
        }
        for im in &images {
            codomain.check_vector(im)?;
        }
        Ok(SemilinearMap {
            domain,
            codomain,
            sigma,
            images,
        })
    }

    pub fn linear(
        domain: HermitianSpace<F>,
        codomain: HermitianSpace<F>,
        images: Vec<Vector<F>>,
    ) -> Result<Self> {
        Self::new(domain, codomain, SfieldMorphism::Identity, images)
    }

    pub fn identity(space: HermitianSpace<F>) -> Self {
        let images = space.basis();
        SemilinearMap {
            domain: space.clone(),
            codomain: space,
            sigma: SfieldMorphism::Identity,
            images,
        }
    }

    pub fn zero(domain: HermitianSpace<F>, codomain: HermitianSpace<F>) -> Self {
        let images = vec![Vector::zeros(codomain.dim()); domain.dim()];
        SemilinearMap {
            domain,
            codomain,
            sigma: SfieldMorphism::Identity,
            images,
        }
    }

    pub fn domain(&self) -> &HermitianSpace<F> {
        &self.domain
    }

    pub fn codomain(&self) -> &HermitianSpace<F> {
        &self.codomain
    }

    pub fn sigma(&self) -> &SfieldMorphism {
        &self.sigma
    }

    pub fn images(&self) -> &[Vector<F>] {
        &self.images
    }

    pub fn is_linear(&self) -> bool {
        self.sigma.is_identity()
    }

    pub fn image_rows(&self) -> Matrix<F> {
        self.images.iter().map(|v| v.0.clone()).collect()
    }

    pub fn apply(&self, u: &Vector<F>) -> Vector<F> {
        let coeffs: Vec<F> = u.0.iter().map(|a| a.apply_morphism(&self.sigma)).collect();
        Vector(linalg::combine(
            &coeffs,
            &self.image_rows(),
            self.codomain.dim(),
        ))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SemilinearMap<F>) -> Result<SemilinearMap<F>> {
        if !inner.codomain.same_as(&self.domain) {
            return Err(Error::input("maps are not composable"));
        }
        let sigma = self.sigma.compose(&inner.sigma)?;
        let images = inner.images.iter().map(|v| self.apply(v)).collect();
        Ok(SemilinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            sigma,
            images,
        })
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.image_rows(), self.codomain.dim())
    }

    pub fn image(&self) -> Subspace<F> {
        Subspace::new(self.codomain.clone(), self.images.clone())
            .expect("images belong to the codomain")
    }

    /// `ker φ = (left kernel of the image matrix)^{σ⁻¹}`.
    pub fn kernel(&self) -> Subspace<F> {
        let inv = self.sigma.inverse();
        let lk = linalg::left_kernel(&self.image_rows(), self.codomain.dim());
        Subspace::new(
            self.domain.clone(),
            lk.into_iter().map(|row| Vector(row).twist(&inv)).collect(),
        )
        .expect("kernel vectors belong to the domain")
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.rank() == self.domain.dim()
    }

    /// The σ⁻¹-semilinear inverse of a bijective map.
    pub fn inverse(&self) -> Result<SemilinearMap<F>> {
        if self.domain.dim() != self.codomain.dim() {
            return Err(Error::input("map is not bijective"));
        }
        let inv = linalg::inverse(&self.image_rows())
            .ok_or_else(|| Error::input("map is not bijective"))?;
        let sigma_inv = self.sigma.inverse();
        Ok(SemilinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            images: inv.into_iter().map(|row| Vector(row).twist(&sigma_inv)).collect(),
            sigma: sigma_inv,
        })
    }

    /// `κφ`, whose morphism is `inner(κ) ∘ σ`.
    pub fn scale_left(&self, kappa: &F) -> Result<SemilinearMap<F>> {
        let sigma = F::inner_morphism(kappa)?.compose(&self.sigma)?;
        Ok(SemilinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            sigma,
            images: self.images.iter().map(|v| v.scale(kappa)).collect(),
        })
    }

    /// Same map, viewed between different spaces of equal dimensions.
    pub fn with_spaces(
        &self,
        domain: HermitianSpace<F>,
        codomain: HermitianSpace<F>,
    ) -> Result<SemilinearMap<F>> {
        SemilinearMap::new(domain, codomain, self.sigma.clone(), self.images.clone())
    }

    /// The adjoint of a linear map: `⟨φ(u),v⟩₂ = ⟨u,φ*(v)⟩₁`.
    ///
    /// Each basis image `φ*(eₘ)` is the dual representative of the linear
    /// functional `u ↦ ⟨φ(u),eₘ⟩₂`.
    pub fn adjoint_linear(&self) -> Result<SemilinearMap<F>> {
        if !self.is_linear() {
            return Err(Error::input("adjoint_linear needs a linear map"));
        }
        let n2 = self.codomain.dim();
        let images = (0..n2)
            .map(|m| {
                let em = self.codomain.basis_vector(m);
                let rho: Vec<F> = self
                    .images
                    .iter()
                    .map(|im| self.codomain.form(im, &em))
                    .collect();
                self.domain.dual_representative(&rho)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SemilinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            sigma: SfieldMorphism::Identity,
            images,
        })
    }

    /// `(σ, λ)` with `⟨φu,φv⟩₂ = ⟨u,v⟩₁^σ λ`, if the map is quasiunitary.
    ///
    /// Checking basis pairs suffices once `λ` is central: the involutions of
    /// both spaces agree and commute with every morphism in the zoo.
    pub fn is_quasiunitary(&self) -> Result<Option<(SfieldMorphism, F)>> {
        if !self.is_bijective() {
            return Err(Error::input("is_quasiunitary needs a bijective map"));
        }
        let n = self.domain.dim();
        if n == 0 {
            return Ok(Some((self.sigma.clone(), F::one())));
        }
        let g1 = self.domain.gram();
        let lambda = g1[0][0]
            .apply_morphism(&self.sigma)
            .inv()?
            .mul_ref(&self.codomain.norm(&self.images[0]));
        if lambda.is_zero() || !lambda.is_central() {
            return Ok(None);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.codomain.form(&self.images[i], &self.images[j]);
                let rhs = g1[i][j].apply_morphism(&self.sigma).mul_ref(&lambda);
                if lhs != rhs {
                    return Ok(None);
                }
            }
        }
        Ok(Some((self.sigma.clone(), lambda)))
    }

    pub fn is_unitary(&self) -> Result<bool> {
        Ok(matches!(
            self.is_quasiunitary()?,
            Some((s, l)) if s.is_identity() && l == F::one()
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "sigma": self.sigma.to_json(),
            "images": Value::Array(self.images.iter().map(Vector::to_json).collect()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::parse(format!("map needs \"{k}\"")))
        };
        let domain = HermitianSpace::from_json(field("domain")?)?;
        let codomain = HermitianSpace::from_json(field("codomain")?)?;
        let sigma = match v.get("sigma") {
            None | Some(Value::Null) => SfieldMorphism::Identity,
            Some(s) => SfieldMorphism::from_json(s)?,
        };
        let images = field("images")?
            .as_array()
            .ok_or_else(|| Error::parse("images must be an array of vectors"))?
            .iter()
            .map(Vector::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, sigma, images).map_err(|e| match e {
            Error::Input(m) => Error::Parse(m),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starfields::{GaussianRational, Rational, RationalQuaternion};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qv(v: &[i64]) -> Vector<Rational> {
        Vector(v.iter().map(|&x| r(x, 1)).collect())
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(r(re, 1), r(im, 1))
    }

    /// Oracle: Eq. `⟨φ(eᵢ),eⱼ⟩ = ⟨eᵢ,φ*(eⱼ)⟩` on every basis pair.
    fn adjoint_holds<F: StarField>(phi: &SemilinearMap<F>, adj: &SemilinearMap<F>) -> bool {
        let (h1, h2) = (phi.domain(), phi.codomain());
        (0..h1.dim()).all(|i| {
            (0..h2.dim()).all(|j| {
                h2.form(&phi.apply(&h1.basis_vector(i)), &h2.basis_vector(j))
                    == h1.form(&h1.basis_vector(i), &adj.apply(&h2.basis_vector(j)))
            })
        })
    }

    #[test]
    fn identity_is_self_adjoint() {
        let h = HermitianSpace::<Rational>::diagonal(&[r(1, 1), r(5, 2)]).unwrap();
        let id = SemilinearMap::identity(h);
        assert_eq!(id.adjoint_linear().unwrap(), id);
    }

    #[test]
    fn adjoint_over_gaussian_rationals() {
        let h = HermitianSpace::<GaussianRational>::standard(2);
        let phi = SemilinearMap::linear(
            h.clone(),
            h.clone(),
            vec![Vector(vec![g(0, 1), g(0, 0)]), Vector(vec![g(0, 0), g(2, 0)])],
        )
        .unwrap();
        let adj = phi.adjoint_linear().unwrap();
        assert_eq!(
            adj.images(),
            &[Vector(vec![g(0, -1), g(0, 0)]), Vector(vec![g(0, 0), g(2, 0)])]
        );
        assert!(adjoint_holds(&phi, &adj));
    }

    #[test]
    fn adjoint_with_weighted_gram() {
        let h = HermitianSpace::<Rational>::diagonal(&[r(1, 1), r(2, 1)]).unwrap();
        let phi = SemilinearMap::linear(h.clone(), h.clone(), vec![qv(&[0, 1]), qv(&[0, 0])])
            .unwrap();
        let adj = phi.adjoint_linear().unwrap();
        assert!(adjoint_holds(&phi, &adj));
        // ⟨φe₁,e₂⟩ = 2 = ⟨e₁, φ*e₂⟩ forces φ*(e₂) = 2e₁
        assert_eq!(adj.images(), &[qv(&[0, 0]), qv(&[2, 0])]);
        assert_eq!(adj.adjoint_linear().unwrap(), phi);
    }

    #[test]
    fn adjoint_rejects_semilinear_input() {
        let h = HermitianSpace::<GaussianRational>::standard(1);
        let phi = SemilinearMap::new(
            h.clone(),
            h,
            SfieldMorphism::Conjugation,
            vec![Vector(vec![g(1, 0)])],
        )
        .unwrap();
        assert!(phi.adjoint_linear().is_err());
    }

    #[test]
    fn quasiunitary_examples() {
        let h = HermitianSpace::<Rational>::standard(2);
        assert_eq!(
            SemilinearMap::identity(h.clone()).is_quasiunitary().unwrap(),
            Some((SfieldMorphism::Identity, Rational::one()))
        );
        let two = SemilinearMap::linear(h.clone(), h.clone(), vec![qv(&[2, 0]), qv(&[0, 2])])
            .unwrap();
        assert_eq!(
            two.is_quasiunitary().unwrap(),
            Some((SfieldMorphism::Identity, r(4, 1)))
        );
        let shear = SemilinearMap::linear(h.clone(), h.clone(), vec![qv(&[1, 0]), qv(&[1, 1])])
            .unwrap();
        assert_eq!(shear.is_quasiunitary().unwrap(), None);
        let singular = SemilinearMap::linear(h.clone(), h, vec![qv(&[1, 0]), qv(&[1, 0])])
            .unwrap();
        assert!(singular.is_quasiunitary().is_err());
    }

    #[test]
    fn quaternion_left_multiplication_is_quasiunitary() {
        let h = HermitianSpace::<RationalQuaternion>::standard(2);
        let q = RationalQuaternion::one() + RationalQuaternion::i();
        let sigma = SfieldMorphism::inner(q.clone());
        let phi = SemilinearMap::new(
            h.clone(),
            h.clone(),
            sigma.clone(),
            h.basis().iter().map(|e| e.scale(&q)).collect(),
        )
        .unwrap();
        // φ(u) = q·u coordinatewise
        let u = Vector(vec![RationalQuaternion::j(), RationalQuaternion::k()]);
        assert_eq!(phi.apply(&u), u.scale(&q));
        let (s, lambda) = phi.is_quasiunitary().unwrap().unwrap();
        assert_eq!(s, sigma);
        assert_eq!(lambda, RationalQuaternion::from_rational(r(2, 1)));
    }

    #[test]
    fn kernel_image_and_inverse() {
        let h = HermitianSpace::<Rational>::standard(3);
        let phi = SemilinearMap::linear(
            h.clone(),
            h.clone(),
            vec![qv(&[0, 1, 0]), qv(&[0, 0, 1]), qv(&[0, 0, 0])],
        )
        .unwrap();
        assert_eq!(phi.rank(), 2);
        assert_eq!(phi.kernel(), Subspace::new(h.clone(), vec![qv(&[0, 0, 1])]).unwrap());
        assert_eq!(
            phi.image(),
            Subspace::new(h.clone(), vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap()
        );
        assert!(phi.inverse().is_err());

        let shear = SemilinearMap::linear(
            h.clone(),
            h.clone(),
            vec![qv(&[1, 0, 0]), qv(&[1, 1, 0]), qv(&[0, 0, 3])],
        )
        .unwrap();
        let inv = shear.inverse().unwrap();
        assert_eq!(shear.compose(&inv).unwrap(), SemilinearMap::identity(h.clone()));
        assert_eq!(inv.compose(&shear).unwrap(), SemilinearMap::identity(h));
    }

    #[test]
    fn semilinear_inverse_and_kernel_use_the_twist() {
        let h = HermitianSpace::<RationalQuaternion>::standard(2);
        let q = RationalQuaternion::one() + RationalQuaternion::j();
        let phi = SemilinearMap::new(
            h.clone(),
            h.clone(),
            SfieldMorphism::inner(q.clone()),
            vec![
                Vector(vec![q.clone(), q.clone()]),
                Vector(vec![RationalQuaternion::zero(), q.clone()]),
            ],
        )
        .unwrap();
        let inv = phi.inverse().unwrap();
        let u = Vector(vec![RationalQuaternion::k(), RationalQuaternion::i()]);
        assert_eq!(inv.apply(&phi.apply(&u)), u);
        assert_eq!(phi.apply(&inv.apply(&u)), u);
        assert!(phi.kernel().is_zero());
    }

    #[test]
    fn map_json_round_trip() {
        let h = HermitianSpace::<GaussianRational>::standard(2);
        let phi = SemilinearMap::new(
            h.clone(),
            h,
            SfieldMorphism::Conjugation,
            vec![Vector(vec![g(1, 2), g(0, 0)]), Vector(vec![g(0, 0), g(3, -1)])],
        )
        .unwrap();
        assert_eq!(SemilinearMap::from_json(&phi.to_json()).unwrap(), phi);
    }
}
