use serde_json::{json, Value};

use super::fastperp::{perp, PerpTable, Side};
use crate::intquat::{mul as qmul_big, BigQuat};
use super::probes::ProbeSet;
use super::ray::{perp_closure, ray_perp, Ray};
use super::raymap::{RayAction, RayMap};
use crate::error::{Error, Result};
use crate::hermspace::{HermitianSpace, Subspace};
use crate::par::{self, Execution};
use crate::report::ReportRecord;
use crate::starfields::StarField;

fn same_space<F: StarField>(space: &HermitianSpace<F>, rays: &[&Ray<F>]) -> Result<()> {
    if rays.iter().all(|r| r.space().same_as(space)) {
        Ok(())
    } else {
        Err(Error::input("rays live in different spaces"))
    }
}

/// Symmetry, anisotropy and the zero ray, over all probe pairs.
pub fn check_axioms<F: StarField>(
    space: &HermitianSpace<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> Vec<ReportRecord> {
    let rays = &probes.rays;
    let n = rays.len();
    let table = PerpTable::new(space, rays, exec);

    let symmetry = par::find_first(exec, n, |i| {
        (i + 1..n).find_map(|j| {
            let (a, b) = (table.perp(i, j), table.perp(j, i));
            (a != b).then(|| {
                json!({
                    "x": rays[i].rep_json(),
                    "y": rays[j].rep_json(),
                    "x_perp_y": a,
                    "y_perp_x": b,
                })
            })
        })
    });

    let anisotropy = par::find_first(exec, n, |i| {
        let self_perp = table.perp(i, i);
        (self_perp != rays[i].is_zero())
            .then(|| json!({ "x": rays[i].rep_json(), "x_perp_x": self_perp }))
    });

    let zero = Ray::zero(space);
    let (zl, zr) = (Side::left(space, &zero), Side::right(&zero));
    let falsity = par::find_first(exec, n, |j| {
        (!perp(&zl, &table.right[j]) || !perp(&table.left[j], &zr))
            .then(|| json!({ "x": rays[j].rep_json() }))
    });

    vec![
        ReportRecord::from_witness("axioms.symmetry", symmetry),
        ReportRecord::from_witness("axioms.anisotropy", anisotropy),
        ReportRecord::from_witness("axioms.zero", falsity),
    ]
}

/// A proper `z` spanning the same closure with `x` as `y` does, such that
/// exactly one of `y` and `z` is orthogonal to `x`.
pub fn linearity_witness<F: StarField>(x: &Ray<F>, y: &Ray<F>) -> Result<Ray<F>> {
    let space = x.space();
    same_space(space, &[y])?;
    let (Some(u), Some(v)) = (x.rep(), y.rep()) else {
        return Err(Error::input("linearity needs proper rays"));
    };
    if x == y {
        return Err(Error::input("linearity needs distinct rays"));
    }
    let c = space.form(v, u);
    if c.is_zero() {
        return Ok(Ray::of_unchecked(space, &u.add(v)));
    }
    let coeff = c.mul_ref(&space.norm(u).inv()?);
    Ok(Ray::of_unchecked(space, &v.sub(&u.scale(&coeff))))
}

/// The postcondition of [`linearity_witness`].
pub fn is_linearity_witness<F: StarField>(x: &Ray<F>, y: &Ray<F>, z: &Ray<F>) -> Result<bool> {
    let space = x.space();
    if z.is_zero() {
        return Ok(false);
    }
    let same = perp_closure(space, &[x.clone(), y.clone()])?
        == perp_closure(space, &[x.clone(), z.clone()])?;
    Ok(same && (ray_perp(x, y)? != ray_perp(x, z)?))
}

/// `y ∈ P(S)` and `z ∈ P(S⊥)` with `x ∈ {y,z}⊥⊥`, from the projection of `x`.
pub fn dacey_witness<F: StarField>(s: &Subspace<F>, x: &Ray<F>) -> Result<(Ray<F>, Ray<F>)> {
    let space = s.space();
    same_space(space, &[x])?;
    let u = x
        .rep()
        .ok_or_else(|| Error::input("dacey witness needs a proper ray"))?;
    let (us, up) = s.project(u)?;
    Ok((Ray::of_unchecked(space, &us), Ray::of_unchecked(space, &up)))
}

pub fn is_dacey_witness<F: StarField>(s: &Subspace<F>, x: &Ray<F>, y: &Ray<F>, z: &Ray<F>) -> Result<bool> {
    let space = s.space();
    Ok(s.contains(&y.vector())
        && s.orthocomplement().contains(&z.vector())
        && perp_closure(space, &[y.clone(), z.clone()])?.contains(&x.vector()))
}

/// A ray `w` with `w ⊥ x` and `w ̸⊥ y`: the component of `y` orthogonal to `x`.
pub fn frechet_separator<F: StarField>(x: &Ray<F>, y: &Ray<F>) -> Result<Ray<F>> {
    let space = x.space();
    same_space(space, &[y])?;
    let (Some(u), Some(v)) = (x.rep(), y.rep()) else {
        return Err(Error::input("separation needs proper rays"));
    };
    if x == y {
        return Err(Error::input("separation needs distinct rays"));
    }
    let coeff = space.form(v, u).mul_ref(&space.norm(u).inv()?);
    Ok(Ray::of_unchecked(space, &v.sub(&u.scale(&coeff))))
}

/// Separates every pair of distinct proper probes. With `w = y − ⟨y,x⟩⟨x,x⟩⁻¹x`
/// one has `⟨x,x⟩⟨w,x⟩ = ⟨x,x⟩⟨y,x⟩ − ⟨y,x⟩⟨x,x⟩` and
/// `⟨x,x⟩⟨w,y⟩ = ⟨x,x⟩⟨y,y⟩ − ⟨y,x⟩⟨x,y⟩`, so both conditions are decided
/// exactly on the integer pairings of the probes. The separator itself is
/// only built for the witness.
pub fn frechet_check<F: StarField>(
    space: &HermitianSpace<F>,
    probes: &ProbeSet<F>,
    exec: Execution,
) -> ReportRecord {
    let rays: Vec<Ray<F>> = probes.proper().cloned().collect();
    let n = rays.len();
    let table = PerpTable::new(space, &rays, exec);
    let norms: Vec<BigQuat> = par::map_range(exec, n, |i| table.value(i, i).expect("proper"));
    let witness = par::find_first(exec, n, |i| {
        (0..n).filter(|&j| j != i).find_map(|j| {
            let (a, d) = (&norms[i], &norms[j]);
            let b = table.value(j, i).expect("proper");
            let c = table.value(i, j).expect("proper");
            let w_perp_x = qmul_big(a, &b) == qmul_big(&b, a);
            let w_y = {
                let (ad, bc) = (qmul_big(a, d), qmul_big(&b, &c));
                ad.iter().zip(&bc).any(|(p, q)| p != q)
            };
            if w_perp_x && w_y {
                return None;
            }
            let w = frechet_separator(&rays[i], &rays[j]).ok();
            Some(json!({
                "x": rays[i].rep_json(),
                "y": rays[j].rep_json(),
                "separator": w.as_ref().map(Ray::rep_json),
            }))
        })
    });
    ReportRecord::from_witness("frechet", witness)
}

/// `f(x) ⊥ y ⇔ x ⊥ g(y)` over all pairs of `probes₁ × probes₂`. The witness
/// is the first violating pair together with the number of violations.
pub fn verify_adjoint_pair<F: StarField>(
    f: &RayMap<F>,
    g: &RayMap<F>,
    probes1: &ProbeSet<F>,
    probes2: &ProbeSet<F>,
    exec: Execution,
) -> ReportRecord {
    const CHECK: &str = "adjoint_pair";
    let (h1, h2) = (f.domain(), f.codomain());
    if !g.domain().same_as(h2) || !g.codomain().same_as(h1) {
        return ReportRecord::error(CHECK, &Error::input("g must map P(H₂) back to P(H₁)"));
    }
    let (xs, ys) = (&probes1.rays, &probes2.rays);
    let fx = par::map(exec, xs, |x| f.apply(x));
    let gy = par::map(exec, ys, |y| g.apply(y));
    let bad_dims = fx.iter().any(|r| r.vector().dim() != h2.dim())
        || gy.iter().any(|r| r.vector().dim() != h1.dim());
    if bad_dims {
        return ReportRecord::error(CHECK, &Error::input("oracle returned a ray of the wrong space"));
    }
    let fx_left = par::map(exec, &fx, |r| Side::left(h2, r));
    let y_right = par::map(exec, ys, Side::right);
    let x_left = par::map(exec, xs, |r| Side::left(h1, r));
    let gy_right = par::map(exec, &gy, Side::right);

    let per_row = par::map_range(exec, xs.len(), |i| {
        let mut count = 0usize;
        let mut first = None;
        for j in 0..ys.len() {
            let lhs = perp(&fx_left[i], &y_right[j]);
            let rhs = perp(&x_left[i], &gy_right[j]);
            if lhs != rhs {
                count += 1;
                first.get_or_insert((j, lhs, rhs));
            }
        }
        (count, first)
    });
    let total: usize = per_row.iter().map(|(c, _)| c).sum();
    let witness = per_row.iter().enumerate().find_map(|(i, (_, first))| {
        first.map(|(j, lhs, rhs)| {
            json!({
                "x": xs[i].rep_json(),
                "y": ys[j].rep_json(),
                "f(x)": fx[i].rep_json(),
                "g(y)": gy[j].rep_json(),
                "f(x)_perp_y": lhs,
                "x_perp_g(y)": rhs,
                "violations": total,
            })
        })
    });
    ReportRecord::from_witness(CHECK, witness)
}

/// Exact rank for induced maps; for oracles the rank of the span of the
/// probe images, which is a lower bound.
pub fn ray_map_rank<F: StarField>(f: &RayMap<F>, probes: &ProbeSet<F>) -> usize {
    match f.action() {
        RayAction::Induced(phi) => phi.rank(),
        RayAction::Oracle(_) => {
            let images: Vec<Ray<F>> = probes.rays.iter().map(|x| f.apply(x)).collect();
            perp_closure(f.codomain(), &images).map_or(0, |s| s.dim())
        }
    }
}

/// `f({x₁,x₂}⊥⊥) ⊆ {f(x₁),f(x₂)}⊥⊥`, tested on the probes inside `{x₁,x₂}⊥⊥`.
pub fn continuity_witness<F: StarField>(
    f: &RayMap<F>,
    x1: &Ray<F>,
    x2: &Ray<F>,
    probes: &ProbeSet<F>,
) -> Result<Option<Value>> {
    let h1 = f.domain();
    let span = perp_closure(h1, &[x1.clone(), x2.clone()])?;
    let target = perp_closure(f.codomain(), &[f.apply(x1), f.apply(x2)])?;
    for x in &probes.rays {
        if span.contains(&x.vector()) && !target.contains(&f.apply(x).vector()) {
            return Ok(Some(json!({
                "x1": x1.rep_json(),
                "x2": x2.rep_json(),
                "x": x.rep_json(),
            })));
        }
    }
    Ok(None)
}
