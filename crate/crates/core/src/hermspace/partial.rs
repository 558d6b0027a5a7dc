use serde_json::{json, Value};

use super::map::SemilinearMap;
use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::starfields::{SfieldMorphism, StarField};

/// A σ-semilinear map from a subspace `S₁ ⊆ H₁` into `H₂`, given by the
/// images of the echelon basis of `S₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceMap<F: StarField> {
    pub sigma: SfieldMorphism,
    pub images: Vec<Vector<F>>,
}

/// `φ = ι_{S₂} ∘ core ∘ proj_{S₁}`: zero on `S₁⊥` and quasiunitary from
/// `S₁` onto `S₂`. Unitary cores (σ = id, λ = 1) give partial isometries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsometryDescriptor<F: StarField> {
    pub map: SemilinearMap<F>,
    pub s1: Subspace<F>,
    pub s2: Subspace<F>,
    pub core: SubspaceMap<F>,
    pub lambda: F,
}

impl<F: StarField> PartialIsometryDescriptor<F> {
    pub fn is_isometry(&self) -> bool {
        self.core.sigma.is_identity() && self.lambda.is_one()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map.to_json(),
            "s1": self.s1.to_json(),
            "s2": self.s2.to_json(),
            "sigma": self.core.sigma.to_json(),
            "lambda": self.lambda.to_json(),
        })
    }
}

/// Builds `ι₂ ∘ core ∘ proj_{s1}` after checking that `core` maps the basis
/// of `s1` onto a basis of `s2` and satisfies `⟨core u, core v⟩ = ⟨u,v⟩^σ λ`.
pub fn make_partial_isometry<F: StarField>(
    s1: &Subspace<F>,
    s2: &Subspace<F>,
    core: &SubspaceMap<F>,
) -> Result<PartialIsometryDescriptor<F>> {
    F::check_morphism(&core.sigma)?;
    let (h1, h2) = (s1.space(), s2.space());
    let k = s1.dim();
    if s2.dim() != k {
        return Err(Error::input(format!(
            "subspace dimensions differ: {} vs {}",
            k,
            s2.dim()
        )));
    }
    if core.images.len() != k {
        return Err(Error::input("core needs one image per basis vector of s1"));
    }
    for im in &core.images {
        if !s2.contains(im) {
            return Err(Error::input(format!("core image {im} is not in s2")));
        }
    }
    let rows: Vec<Vec<F>> = core.images.iter().map(|v| v.0.clone()).collect();
    if linalg::rank(&rows, h2.dim()) != k {
        return Err(Error::input("core is not injective"));
    }
    let basis = s1.basis();
    let lambda = if k == 0 {
        F::one()
    } else {
        h1.norm(&basis[0])
            .apply_morphism(&core.sigma)
            .inv()?
            .mul_ref(&h2.norm(&core.images[0]))
    };
    if !lambda.is_central() {
        return Err(Error::input("core is not quasiunitary"));
    }
    for i in 0..k {
        for j in 0..k {
            let lhs = h2.form(&core.images[i], &core.images[j]);
            let rhs = h1
                .form(&basis[i], &basis[j])
                .apply_morphism(&core.sigma)
                .mul_ref(&lambda);
            if lhs != rhs {
                return Err(Error::input(format!(
                    "core is not quasiunitary on basis pair ({i}, {j})"
                )));
            }
        }
    }
    let projector = s1.projector();
    let images = h1
        .basis()
        .iter()
        .map(|e| {
            let p = projector.project(e);
            let c = s1.coordinates(&p).expect("projection lies in s1");
            let c: Vec<F> = c.iter().map(|x| x.apply_morphism(&core.sigma)).collect();
            Vector(linalg::combine(&c, &rows, h2.dim()))
        })
        .collect();
    let map = SemilinearMap::new(h1.clone(), h2.clone(), core.sigma.clone(), images)?;
    Ok(PartialIsometryDescriptor {
        map,
        s1: s1.clone(),
        s2: s2.clone(),
        core: core.clone(),
        lambda,
    })
}

/// The map `ψ` vanishing on `s2⊥` with `ψ|_{s2} = core⁻¹`; for a partial
/// isometry it coincides with the adjoint.
pub fn generalized_inverse<F: StarField>(d: &PartialIsometryDescriptor<F>) -> Result<SemilinearMap<F>> {
    if !d.is_isometry() {
        return Err(Error::UnsupportedVariant(
            "generalized inverse needs a partial isometry; transport the quasi variant first"
                .into(),
        ));
    }
    let (h1, h2) = (d.s1.space(), d.s2.space());
    let image_rows: Vec<Vec<F>> = d.core.images.iter().map(|v| v.0.clone()).collect();
    let basis_rows: Vec<Vec<F>> = d.s1.basis().iter().map(|v| v.0.clone()).collect();
    let projector = d.s2.projector();
    let images = h2
        .basis()
        .iter()
        .map(|e| {
            let p = projector.project(e);
            let c = linalg::solve_left(&image_rows, &p.0).expect("projection lies in s2");
            Vector(linalg::combine(&c, &basis_rows, h1.dim()))
        })
        .collect();
    SemilinearMap::linear(h2.clone(), h1.clone(), images)
}
