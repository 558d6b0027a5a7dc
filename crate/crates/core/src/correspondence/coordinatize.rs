use serde_json::{json, Value};

use super::induce::{classify_morphism, piziak_lambda};
use crate::error::{Error, Result};
use crate::hermspace::{SemilinearMap, Subspace, Vector};
use crate::linalg;
use crate::orthoset::{perp_closure, verify_adjoint_pair, ProbeSet, Ray, RayMap};
use crate::par::{self, Execution};
use crate::report::ReportRecord;
use crate::starfields::{SfieldMorphism, StarField};

/// A semilinear map recovered from a ray map, with the checks it passed.
#[derive(Clone, Debug)]
pub struct CoordinatizationResult<F: StarField> {
    pub map: SemilinearMap<F>,
    pub sigma: SfieldMorphism,
    pub report: Vec<ReportRecord>,
}

impl<F: StarField> CoordinatizationResult<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map.to_json(),
            "sigma": self.sigma.to_json(),
            "report": self.report.iter().map(|r| r.to_json(false)).collect::<Vec<_>>(),
        })
    }
}

/// First probe where `P(φ)` and `f` disagree.
pub(crate) fn disagreement<F: StarField>(
    phi: &SemilinearMap<F>,
    f: &RayMap<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> Option<Value> {
    let induced = RayMap::induced(phi.clone());
    let xs = &probes.rays;
    par::find_first(exec, xs.len(), |i| {
        let (want, got) = (f.apply(&xs[i]), induced.apply(&xs[i]));
        (want != got).then(|| {
            json!({ "x": xs[i].rep_json(), "f(x)": want.rep_json(), "phi(x)": got.rep_json() })
        })
    })
}

fn not_induced(reason: &str, rays: &[(&str, &Ray<impl StarField>)]) -> Error {
    let mut w = json!({ "reason": reason });
    for (name, r) in rays {
        w[*name] = r.rep_json();
    }
    Error::NotInduced { witness: w }
}

/// `(a, b)` with `s = a·p + b·q`, both nonzero.
fn split2<F: StarField>(p: &Vector<F>, q: &Vector<F>, s: &Vector<F>) -> Option<(F, F)> {
    let c = linalg::solve_left(&[p.0.clone(), q.0.clone()], &s.0)?;
    let (a, b) = (c[0].clone(), c[1].clone());
    (!a.is_zero() && !b.is_zero()).then_some((a, b))
}

/// Recovers `φ` with `f = P(φ)` for a ray map of rank at least 3.
///
/// `(ker f)⊥` is read off the adjoint's probe images when an adjoint is
/// supplied, and otherwise taken as the complement of the probes sent to
/// zero. On an orthogonal basis `u₁…u_k` of it, `φ(u₁)` is any
/// representative of `f⟨u₁⟩`, the other `φ(uᵢ)` are scaled so that
/// `f⟨u₁+uᵢ⟩ = ⟨φu₁ + φuᵢ⟩`, and `σ` is read off `f⟨u₁ + g·u₂⟩` for each
/// generator `g`. The result is checked against `f` on every probe.
pub fn coordinatize<F: StarField>(
    f: &RayMap<F>,
    adjoint: Option<&RayMap<F>>,
    probes1: &ProbeSet<F>,
    probes2: &ProbeSet<F>,
    exec: Execution,
) -> Result<CoordinatizationResult<F>> {
    let (h1, h2) = (f.domain(), f.codomain());
    let fx = par::map(exec, &probes1.rays, |x| f.apply(x));
    let killed: Vec<Ray<F>> = probes1
        .rays
        .iter()
        .zip(&fx)
        .filter(|(_, y)| y.is_zero())
        .map(|(x, _)| x.clone())
        .collect();
    let null = perp_closure(h1, &killed)?;
    let support = match adjoint {
        Some(g) => {
            let gy = par::map(exec, &probes2.rays, |y| g.apply(y));
            perp_closure(h1, &gy)?
        }
        None => null.orthocomplement(),
    };
    if !support.orthocomplement().contains_subspace(&null) {
        let x = killed
            .iter()
            .find(|x| !support.orthocomplement().contains(&x.vector()))
            .expect("some killed probe leaves the complement");
        return Err(not_induced("probe sent to zero is not orthogonal to (ker f)⊥", &[("x", x)]));
    }
    let k = support.dim();
    if k < 3 {
        return Err(Error::Precondition(format!(
            "coordinatization needs rank at least 3, found {k}"
        )));
    }

    let projector = support.projector();
    let u = projector.orthogonal_basis();
    let ray = |v: &Vector<F>| Ray::of_unchecked(h1, v);
    let image_rep = |v: &Vector<F>| -> Result<Vector<F>> {
        let x = ray(v);
        let y = f.apply(&x);
        y.rep()
            .cloned()
            .ok_or_else(|| not_induced("vector of (ker f)⊥ is sent to zero", &[("x", &x)]))
    };

    let mut phi_u = vec![image_rep(&u[0])?];
    for ui in &u[1..] {
        let wi = image_rep(ui)?;
        let sum = u[0].add(ui);
        let s = image_rep(&sum)?;
        let (a, b) = split2(&phi_u[0], &wi, &s).ok_or_else(|| {
            not_induced("image of a sum is not in the span of the images", &[("x", &ray(&sum))])
        })?;
        phi_u.push(wi.scale(&a.inv()?.mul_ref(&b)));
    }

    let mut generator_images = Vec::new();
    for g in F::generators() {
        let v = u[0].add(&u[1].scale(&g));
        let s = image_rep(&v)?;
        let (a, b) = split2(&phi_u[0], &phi_u[1], &s)
            .ok_or_else(|| not_induced("σ is undefined on a generator", &[("x", &ray(&v))]))?;
        generator_images.push(a.inv()?.mul_ref(&b));
    }
    let sigma = classify_morphism(&generator_images).ok_or_else(|| Error::NotInduced {
        witness: json!({
            "reason": "generator images match no morphism",
            "images": generator_images.iter().map(F::to_json).collect::<Vec<_>>(),
        }),
    })?;

    let rows: Vec<Vec<F>> = phi_u.iter().map(|v| v.0.clone()).collect();
    let images = h1
        .basis()
        .iter()
        .map(|e| {
            let c: Vec<F> = projector
                .coefficients(e)
                .iter()
                .map(|x| x.apply_morphism(&sigma))
                .collect();
            Vector(linalg::combine(&c, &rows, h2.dim()))
        })
        .collect();
    let map = SemilinearMap::new(h1.clone(), h2.clone(), sigma.clone(), images)?;
    if let Some(witness) = disagreement(&map, f, probes1, exec) {
        return Err(Error::NotInduced { witness });
    }
    Ok(CoordinatizationResult {
        map,
        sigma,
        report: vec![
            ReportRecord::pass("coordinatize.kernel"),
            ReportRecord::pass("coordinatize.agreement"),
        ],
    })
}

#[derive(Clone, Debug)]
pub struct WignerResult<F: StarField> {
    pub coordinatization: CoordinatizationResult<F>,
    pub sigma: SfieldMorphism,
    pub lambda: F,
}

impl<F: StarField> WignerResult<F> {
    pub fn map(&self) -> &SemilinearMap<F> {
        &self.coordinatization.map
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.coordinatization.to_json();
        v["lambda"] = self.lambda.to_json();
        v
    }
}

/// First probe where `g∘f` is not the identity.
fn not_inverse<F: StarField>(f: &RayMap<F>, g: &RayMap<F>, probes: &ProbeSet<F>, exec: Execution) -> Option<Value> {
    let xs = &probes.rays;
    par::find_first(exec, xs.len(), |i| {
        let back = g.apply(&f.apply(&xs[i]));
        (back != xs[i]).then(|| json!({ "x": xs[i].rep_json(), "back": back.rep_json() }))
    })
}

/// Recovers a quasiunitary `φ` from an orthoisomorphism given with its
/// inverse, in dimension at least 3.
pub fn wigner_reconstruct<F: StarField>(
    f: &RayMap<F>,
    f_inv: &RayMap<F>,
    probes1: &ProbeSet<F>,
    probes2: &ProbeSet<F>,
    exec: Execution,
) -> Result<WignerResult<F>> {
    let (h1, h2) = (f.domain(), f.codomain());
    if h1.dim() < 3 || h2.dim() < 3 {
        return Err(Error::Precondition(
            "reconstruction needs dimension at least 3".into(),
        ));
    }
    let pair = verify_adjoint_pair(f, f_inv, probes1, probes2, exec);
    if !pair.passed() {
        return Err(Error::NotOrthoiso {
            witness: pair.witness.unwrap_or(Value::Null),
        });
    }
    let inverse = not_inverse(f, f_inv, probes1, exec).or_else(|| not_inverse(f_inv, f, probes2, exec));
    if let Some(witness) = inverse {
        return Err(Error::NotOrthoiso { witness });
    }
    let mut coordinatization = coordinatize(f, Some(f_inv), probes1, probes2, exec)?;
    let phi = &coordinatization.map;
    let certified = if phi.is_bijective() { phi.is_quasiunitary()? } else { None };
    let (sigma, lambda) = certified.ok_or_else(|| Error::NotOrthoiso {
        witness: json!({ "reason": "recovered map is not quasiunitary", "map": phi.to_json() }),
    })?;
    let piziak = piziak_lambda(phi, probes1, exec)?;
    if piziak != lambda {
        return Err(Error::Inconsistent(format!(
            "piziak λ {} differs from certified λ {}",
            piziak.to_json(),
            lambda.to_json()
        )));
    }
    coordinatization.report.extend([
        pair,
        ReportRecord::pass("wigner.inverse"),
        ReportRecord::pass("wigner.quasiunitary"),
        ReportRecord::pass("wigner.piziak"),
    ]);
    Ok(WignerResult {
        coordinatization,
        sigma,
        lambda,
    })
}

/// The unitary `φ` inducing an orthoautomorphism `f` that fixes `P(S)`
/// pointwise, normalized so that `φ|_S = id`.
pub fn fix_subspace_normalize<F: StarField>(
    f: &RayMap<F>,
    f_inv: &RayMap<F>,
    s: &Subspace<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> Result<SemilinearMap<F>> {
    let h = f.domain();
    if h.dim() < 3 || s.dim() < 2 {
        return Err(Error::Precondition(
            "normalization needs dim H ≥ 3 and dim S ≥ 2".into(),
        ));
    }
    let basis = s.basis();
    let mut fixed: Vec<Ray<F>> = probes
        .rays
        .iter()
        .filter(|x| s.contains(&x.vector()))
        .cloned()
        .collect();
    for (i, b) in basis.iter().enumerate() {
        fixed.push(Ray::of_unchecked(h, b));
        for c in &basis[i + 1..] {
            fixed.push(Ray::of_unchecked(h, &b.add(c)));
        }
    }
    if let Some(x) = fixed.iter().find(|x| f.apply(x) != **x) {
        return Err(Error::InconsistentFixedSubspace(format!("f moves {x}")));
    }
    let w = wigner_reconstruct(f, f_inv, probes, probes, exec)?;
    let phi = w.map();
    let p = basis[0].leading().expect("basis vectors are nonzero");
    let kappa = phi.apply(&basis[0]).0[p].mul_ref(&basis[0].0[p].inv()?);
    if kappa.is_zero() || basis.iter().any(|b| phi.apply(b) != b.scale(&kappa)) {
        return Err(Error::InconsistentFixedSubspace(
            "restriction to S is not a scalar multiple of the identity".into(),
        ));
    }
    let normalized = phi.scale_left(&kappa.inv()?)?;
    if !normalized.is_unitary()? || basis.iter().any(|b| normalized.apply(b) != *b) {
        return Err(Error::InconsistentFixedSubspace(
            "normalized map is not a unitary fixing S".into(),
        ));
    }
    Ok(normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{induce, scalar_ratio};
    use crate::hermspace::{make_partial_isometry, HermitianSpace, SubspaceMap};
    use crate::orthoset::ProbeSpec;
    use crate::starfields::{GaussianRational, Rational};
    use num_bigint::BigInt;

    fn qv(v: &[i64]) -> Vector<Rational> {
        Vector(v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    fn probes<F: StarField>(h: &HermitianSpace<F>) -> ProbeSet<F> {
        ProbeSet::generate(h, ProbeSpec::new(0, 60))
    }

    #[test]
    fn identity_is_recovered() {
        let h = HermitianSpace::<Rational>::standard(3);
        let id = RayMap::identity(h.clone());
        let p = probes(&h);
        let r = coordinatize(&id, None, &p, &p, Execution::default()).unwrap();
        assert_eq!(r.sigma, SfieldMorphism::Identity);
        assert!(scalar_ratio(&r.map, &SemilinearMap::identity(h.clone())).unwrap().is_some());
        let w = wigner_reconstruct(&id, &id, &p, &p, Execution::default()).unwrap();
        assert_eq!(w.lambda, Rational::from_integer(1.into()));
    }

    #[test]
    fn conjugation_is_recovered_on_gaussian_space() {
        let h = HermitianSpace::<GaussianRational>::standard(3);
        let i = GaussianRational::i();
        let one = GaussianRational::from_rational(Rational::from_integer(1.into()));
        let zero = GaussianRational::from_rational(Rational::from_integer(0.into()));
        // a unitary swap with a phase, composed with conjugation
        let phi0 = SemilinearMap::new(
            h.clone(),
            h.clone(),
            SfieldMorphism::Conjugation,
            vec![
                Vector(vec![zero.clone(), i.clone(), zero.clone()]),
                Vector(vec![one.clone(), zero.clone(), zero.clone()]),
                Vector(vec![zero.clone(), zero.clone(), one.clone()]),
            ],
        )
        .unwrap();
        let f = induce(&phi0);
        let finv = induce(&phi0.inverse().unwrap());
        let p = probes(&h);
        let w = wigner_reconstruct(&f, &finv, &p, &p, Execution::default()).unwrap();
        assert_eq!(w.sigma, SfieldMorphism::Conjugation);
        assert!(scalar_ratio(w.map(), &phi0).unwrap().is_some());
    }

    #[test]
    fn partial_isometry_kernel_is_recovered() {
        let h = HermitianSpace::<Rational>::standard(3);
        let s1 = Subspace::new(h.clone(), vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let s2 = Subspace::new(h.clone(), vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        let core = SubspaceMap { sigma: SfieldMorphism::Identity, images: vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])] };
        let d = make_partial_isometry(&s1, &s2, &core).unwrap();
        let p = probes(&h);
        // rank 2 is below the threshold
        let err = coordinatize(&induce(&d.map), None, &p, &p, Execution::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));

        // a rank-3 map on Q⁴ with kernel span{e₄}
        let h4 = HermitianSpace::<Rational>::standard(4);
        let phi0 = SemilinearMap::linear(
            h4.clone(),
            h4.clone(),
            vec![qv(&[0, 1, 0, 0]), qv(&[0, 0, 1, 0]), qv(&[1, 0, 0, 0]), qv(&[0, 0, 0, 0])],
        )
        .unwrap();
        let p4 = probes(&h4);
        let adj = induce(&phi0.adjoint_linear().unwrap());
        let r = coordinatize(&induce(&phi0), Some(&adj), &p4, &p4, Execution::default()).unwrap();
        assert_eq!(r.map.kernel(), Subspace::new(h4.clone(), vec![qv(&[0, 0, 0, 1])]).unwrap());
        assert!(scalar_ratio(&r.map, &phi0).unwrap().is_some());
    }

    #[test]
    fn non_induced_oracle_is_rejected() {
        let h = HermitianSpace::<Rational>::standard(3);
        let hh = h.clone();
        // swaps two rays and fixes the rest
        let f = RayMap::oracle(h.clone(), h.clone(), move |x| {
            let a = Ray::of_unchecked(&hh, &qv(&[1, 1, 1]));
            let b = Ray::of_unchecked(&hh, &qv(&[1, 2, 3]));
            if *x == a {
                b
            } else if *x == b {
                a
            } else {
                x.clone()
            }
        });
        let mut p = probes(&h);
        p.rays.push(Ray::of_unchecked(&h, &qv(&[1, 2, 3])));
        let err = coordinatize(&f, None, &p, &p, Execution::default()).unwrap_err();
        assert!(matches!(err, Error::NotInduced { .. }));
    }

    #[test]
    fn fixed_subspace_examples() {
        let h = HermitianSpace::<Rational>::standard(3);
        let p = probes(&h);
        let s = Subspace::new(h.clone(), vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let id = RayMap::identity(h.clone());
        assert_eq!(
            fix_subspace_normalize(&id, &id, &s, &p, Execution::default()).unwrap(),
            SemilinearMap::identity(h.clone())
        );
        let reflect = SemilinearMap::linear(h.clone(), h.clone(), vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, -1])]).unwrap();
        let f = induce(&reflect);
        assert_eq!(fix_subspace_normalize(&f, &f, &s, &p, Execution::default()).unwrap(), reflect);
        let two = induce(&SemilinearMap::identity(h.clone()).scale_left(&Rational::from_integer(2.into())).unwrap());
        assert_eq!(
            fix_subspace_normalize(&two, &two, &s, &p, Execution::default()).unwrap(),
            SemilinearMap::identity(h.clone())
        );
        let swap = SemilinearMap::linear(h.clone(), h.clone(), vec![qv(&[0, 1, 0]), qv(&[1, 0, 0]), qv(&[0, 0, 1])]).unwrap();
        let f = induce(&swap);
        assert!(matches!(
            fix_subspace_normalize(&f, &f, &s, &p, Execution::default()),
            Err(Error::InconsistentFixedSubspace(_))
        ));
    }
}
