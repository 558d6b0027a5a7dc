use std::sync::Arc;

use serde_json::{json, Value};

use super::coordinatize::{disagreement, wigner_reconstruct, WignerResult};
use crate::error::{Error, Result};
use crate::hermspace::{
    make_partial_isometry, HermitianSpace, PartialIsometryDescriptor, Subspace,
    SubspaceMap, Vector,
};
use crate::intquat::{self, BigQuat, IntMorphism};
use crate::linalg;
use crate::orthoset::{perp_closure, verify_adjoint_pair, ProbeSet, Ray, RayMap};
use crate::par::{self, Execution};
use crate::report::ReportRecord;
use crate::starfields::{Rational, StarField};

/// A subspace viewed as a Hermitian space of its own, in the coordinates of
/// an orthogonal basis (so its gram is diagonal). Basis vectors are scaled
/// to integer rows with integer norms, which keeps coordinates small.
#[derive(Clone, Debug)]
pub struct SubHermitian<F: StarField> {
    pub subspace: Subspace<F>,
    pub space: HermitianSpace<F>,
    basis: Vec<Vector<F>>,
    inv_norms: Vec<F>,
    // integer rows for the ray maps: basis vectors, and `M_ji = ⟨e_j,b_i⟩/⟨b_i,b_i⟩`
    int_basis: Arc<Vec<Vec<BigQuat>>>,
    int_coords: Arc<Vec<Vec<BigQuat>>>,
}

fn from_int<F: StarField>(row: &[BigQuat]) -> Vector<F> {
    Vector(row.iter().map(|q| F::from_embed(q.clone().map(Rational::from_integer))).collect())
}

impl<F: StarField> SubHermitian<F> {
    pub fn new(subspace: Subspace<F>) -> Result<Self> {
        let ambient = subspace.space();
        let mut basis = Vec::new();
        let mut norms = Vec::new();
        for b in subspace.projector().orthogonal_basis() {
            let b = from_int::<F>(&intquat::primitive(intquat::integerize(&b.0)));
            let n = ambient
                .norm(&b)
                .as_rational()
                .ok_or_else(|| Error::Certificate("norm is not rational".into()))?;
            let d = F::from_rational(Rational::from_integer(n.denom().clone()));
            norms.push(&n * Rational::from_integer(n.denom() * n.denom()));
            basis.push(b.scale(&d));
        }
        let inv_norms: Vec<F> = norms.iter().map(|n| F::from_rational(n.recip())).collect();
        let coords: Vec<Vec<F>> = ambient
            .basis()
            .iter()
            .map(|e| basis.iter().zip(&inv_norms).map(|(b, ni)| ambient.form(e, b).mul_ref(ni)).collect())
            .collect();
        let rows: Vec<Vec<F>> = basis.iter().map(|b| b.0.clone()).collect();
        Ok(SubHermitian {
            space: HermitianSpace::diagonal(&norms)?,
            int_basis: Arc::new(intquat::integerize_rows(&rows)),
            int_coords: Arc::new(intquat::integerize_rows(&coords)),
            basis,
            inv_norms,
            subspace,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    /// `ι`: local coordinates to the ambient vector.
    pub fn embed(&self, c: &Vector<F>) -> Vector<F> {
        let rows: Vec<Vec<F>> = self.basis.iter().map(|b| b.0.clone()).collect();
        Vector(linalg::combine(&c.0, &rows, self.subspace.space().dim()))
    }

    /// Local coordinates of the orthogonal projection of `u`.
    pub fn coords(&self, u: &Vector<F>) -> Vector<F> {
        let ambient = self.subspace.space();
        Vector(
            self.basis
                .iter()
                .zip(&self.inv_norms)
                .map(|(b, ni)| ambient.form(u, b).mul_ref(ni))
                .collect(),
        )
    }

    fn embed_ray(&self, x: &Ray<F>) -> Ray<F> {
        match x.int_row() {
            None => Ray::zero(self.subspace.space()),
            Some(c) => {
                let n = self.subspace.space().dim();
                Ray::from_int(self.subspace.space(), intquat::combine(&IntMorphism::Identity, c, &self.int_basis, n))
            }
        }
    }

    fn project_ray(&self, x: &Ray<F>) -> Ray<F> {
        match x.int_row() {
            None => Ray::zero(&self.space),
            Some(u) => Ray::from_int(&self.space, intquat::combine(&IntMorphism::Identity, u, &self.int_coords, self.dim())),
        }
    }
}

/// `f = ι_B ∘ core ∘ π_A` with `A = (ker f)⊥` and `B` the closure of the image.
#[derive(Clone, Debug)]
pub struct PartialOrthometryDecomposition<F: StarField> {
    pub a: SubHermitian<F>,
    pub b: SubHermitian<F>,
    pub core: RayMap<F>,
    pub core_inverse: RayMap<F>,
    pub reassembled: RayMap<F>,
    pub a_probes: ProbeSet<F>,
    pub b_probes: ProbeSet<F>,
    pub report: Vec<ReportRecord>,
}

impl<F: StarField> PartialOrthometryDecomposition<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "A": self.a.subspace.to_json(),
            "B": self.b.subspace.to_json(),
            "report": self.report.iter().map(|r| r.to_json(false)).collect::<Vec<_>>(),
        })
    }
}

fn not_partial(check: &str, witness: Value) -> Error {
    Error::NotPartialOrthometry {
        witness: json!({ "check": check, "witness": witness }),
    }
}

/// First ray of `rays` that `f` does not send to zero.
fn survivor<F: StarField>(f: &RayMap<F>, rays: &[Ray<F>]) -> Option<Value> {
    rays.iter()
        .find(|x| !f.apply(x).is_zero())
        .map(|x| json!({ "x": x.rep_json(), "f(x)": f.apply(x).rep_json() }))
}

fn complement_rays<F: StarField>(s: &Subspace<F>) -> Vec<Ray<F>> {
    s.orthocomplement()
        .basis()
        .iter()
        .map(|v| Ray::of_unchecked(s.space(), v))
        .collect()
}

/// Splits a ray map `f` with adjoint `g` into its core orthoisomorphism
/// between `A = (ker f)⊥ = (im g)⊥⊥` and `B = (ker g)⊥ = (im f)⊥⊥`.
pub fn decompose_partial_orthometry<F: StarField>(
    f: &RayMap<F>,
    g: &RayMap<F>,
    probes1: &ProbeSet<F>,
    probes2: &ProbeSet<F>,
    exec: Execution,
) -> Result<PartialOrthometryDecomposition<F>> {
    let (h1, h2) = (f.domain(), f.codomain());
    let pair = verify_adjoint_pair(f, g, probes1, probes2, exec);
    if let Some(w) = &pair.witness {
        return Err(not_partial("adjoint_pair", w.clone()));
    }
    let fx = par::map(exec, &probes1.rays, |x| f.apply(x));
    let gy = par::map(exec, &probes2.rays, |y| g.apply(y));
    let a = perp_closure(h1, &gy)?;
    let b = perp_closure(h2, &fx)?;
    let kernel = survivor(f, &complement_rays(&a)).or_else(|| survivor(g, &complement_rays(&b)));
    if let Some(w) = kernel {
        return Err(not_partial("kernel", w));
    }
    if a.dim() != b.dim() {
        return Err(not_partial(
            "dimensions",
            json!({ "A": a.dim(), "B": b.dim() }),
        ));
    }
    let (a, b) = (SubHermitian::new(a)?, SubHermitian::new(b)?);

    let core = {
        let (a, b, f) = (a.clone(), b.clone(), f.clone());
        RayMap::oracle(a.space.clone(), b.space.clone(), move |x| {
            b.project_ray(&f.apply(&a.embed_ray(x)))
        })
    };
    let core_inverse = {
        let (a, b, g) = (a.clone(), b.clone(), g.clone());
        RayMap::oracle(b.space.clone(), a.space.clone(), move |y| {
            a.project_ray(&g.apply(&b.embed_ray(y)))
        })
    };
    let a_probes = ProbeSet::generate(&a.space, probes1.spec);
    let b_probes = ProbeSet::generate(&b.space, probes2.spec);
    let core_pair = verify_adjoint_pair(&core, &core_inverse, &a_probes, &b_probes, exec);
    if let Some(w) = &core_pair.witness {
        return Err(not_partial("core_orthoiso", w.clone()));
    }
    let round_trip = |p: &ProbeSet<F>, there: &RayMap<F>, back: &RayMap<F>| {
        p.rays
            .iter()
            .find(|x| back.apply(&there.apply(x)) != **x)
            .map(|x| json!({ "x": x.rep_json() }))
    };
    let inverse = round_trip(&a_probes, &core, &core_inverse)
        .or_else(|| round_trip(&b_probes, &core_inverse, &core));
    if let Some(w) = inverse {
        return Err(not_partial("core_inverse", w));
    }

    let reassembled = {
        let (a, b, core) = (a.clone(), b.clone(), core.clone());
        RayMap::oracle(h1.clone(), h2.clone(), move |x| {
            b.embed_ray(&core.apply(&a.project_ray(x)))
        })
    };
    let mismatch = probes1
        .rays
        .iter()
        .zip(&fx)
        .find(|(x, y)| reassembled.apply(x) != **y)
        .map(|(x, _)| json!({ "x": x.rep_json() }));
    if let Some(w) = mismatch {
        return Err(not_partial("reassembled", w));
    }
    Ok(PartialOrthometryDecomposition {
        a,
        b,
        core,
        core_inverse,
        reassembled,
        a_probes,
        b_probes,
        report: vec![
            ReportRecord::pass("partial.adjoint_pair"),
            ReportRecord::pass("partial.kernel"),
            ReportRecord::pass("partial.core_orthoiso"),
            ReportRecord::pass("partial.reassembled"),
        ],
    })
}

#[derive(Clone, Debug)]
pub struct PartialWignerResult<F: StarField> {
    pub descriptor: PartialIsometryDescriptor<F>,
    pub decomposition: PartialOrthometryDecomposition<F>,
    pub core: WignerResult<F>,
    pub report: Vec<ReportRecord>,
}

/// A partial quasiisometry inducing the partial orthometry `f`, built as
/// `ι_B ∘ φ̂ ∘ π_A` from the reconstructed core `φ̂`.
pub fn partial_wigner<F: StarField>(
    f: &RayMap<F>,
    g: &RayMap<F>,
    probes1: &ProbeSet<F>,
    probes2: &ProbeSet<F>,
    exec: Execution,
) -> Result<PartialWignerResult<F>> {
    let dec = decompose_partial_orthometry(f, g, probes1, probes2, exec)?;
    if dec.a.dim() < 3 {
        return Err(Error::Precondition(format!(
            "(ker f)⊥ has dimension {}, at least 3 is needed",
            dec.a.dim()
        )));
    }
    let core = wigner_reconstruct(&dec.core, &dec.core_inverse, &dec.a_probes, &dec.b_probes, exec)?;
    let phi_hat = core.map();
    let images = dec
        .a
        .subspace
        .basis()
        .iter()
        .map(|v| dec.b.embed(&phi_hat.apply(&dec.a.coords(v))))
        .collect();
    let core_map = SubspaceMap {
        sigma: phi_hat.sigma().clone(),
        images,
    };
    let descriptor = make_partial_isometry(&dec.a.subspace, &dec.b.subspace, &core_map)?;
    if let Some(witness) = disagreement(&descriptor.map, f, probes1, exec) {
        return Err(Error::NotInduced { witness });
    }
    let mut report = dec.report.clone();
    report.extend(core.coordinatization.report.iter().cloned());
    report.push(ReportRecord::pass("partial_wigner.agreement"));
    Ok(PartialWignerResult {
        descriptor,
        decomposition: dec,
        core,
        report,
    })
}
