use clap::ValueEnum;
use orthoset_lab::correspondence::{
    check_tau, coordinatize, decompose_partial_orthometry, induce, piziak_lambda, scalar_ratio,
    transport_linear, transport_unitary,
};
use orthoset_lab::hermspace::{SemilinearMap, Subspace, Vector};
use orthoset_lab::orthoset::{ray_map_rank, verify_adjoint_pair, ProbeSet, ProbeSpec, RayMap};
use orthoset_lab::par::Execution;
use orthoset_lab::report::ReportRecord;
use orthoset_lab::starfields::{SfieldMorphism, StarField};
use orthoset_lab::Result;
use serde_json::{json, Value};

use crate::io::{raw_subspace, Documents};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    GramSchmidt,
    Project,
    Adjoint,
    Induce,
    Piziak,
    Coordinatize,
    Transport,
    TransportUnitary,
    PartialDecompose,
}

fn check(name: &str, ok: bool, witness: impl FnOnce() -> Value) -> ReportRecord {
    if ok {
        ReportRecord::pass(name)
    } else {
        ReportRecord::fail(name, witness())
    }
}

fn vectors(vs: &[Vector<impl StarField>]) -> Value {
    Value::Array(vs.iter().map(Vector::to_json).collect())
}

/// The map of the `--map` file and its optional `"adjoint"`.
fn map_with_adjoint<F: StarField>(docs: &Documents) -> Result<(SemilinearMap<F>, Option<SemilinearMap<F>>)> {
    let doc = docs.need_map()?;
    let adjoint = doc.get("adjoint").map(SemilinearMap::from_json).transpose()?;
    Ok((SemilinearMap::from_json(doc)?, adjoint))
}

/// `P(φ)` presented as an opaque oracle, so nothing downstream can read `φ`.
fn opaque<F: StarField>(phi: &SemilinearMap<F>) -> RayMap<F> {
    let induced = induce(phi);
    RayMap::oracle(phi.domain().clone(), phi.codomain().clone(), move |x| induced.apply(x))
}

/// Runs one construction and returns its serialized result and report.
pub fn run<F: StarField>(kind: Kind, docs: &Documents, spec: ProbeSpec, exec: Execution) -> Result<(Value, Vec<ReportRecord>)> {
    match kind {
        Kind::GramSchmidt => {
            let (space, input, _) = raw_subspace::<F>(docs.need_subspace()?)?;
            let out = space.gram_schmidt(&input)?;
            let orthogonal = out
                .iter()
                .enumerate()
                .all(|(i, a)| out[i + 1..].iter().all(|b| space.form(a, b).is_zero()));
            let span = Subspace::new(space.clone(), input.clone())? == Subspace::new(space.clone(), out.clone())?;
            let doc = json!({ "space": space.to_json(), "basis": vectors(&out) });
            Ok((doc, vec![
                check("gram_schmidt.orthogonal", orthogonal, || json!({ "basis": vectors(&out) })),
                check("gram_schmidt.span", span, || json!({ "input": vectors(&input) })),
            ]))
        }
        Kind::Project => {
            let (space, basis, u) = raw_subspace::<F>(docs.need_subspace()?)?;
            let u = u.ok_or_else(|| orthoset_lab::Error::parse("project needs a \"vector\" in the subspace file"))?;
            let s = Subspace::new(space.clone(), basis)?;
            let (us, up) = s.project(&u)?;
            let doc = json!({ "parallel": us.to_json(), "perp": up.to_json() });
            let w = || json!({ "parallel": us.to_json(), "perp": up.to_json() });
            Ok((doc.clone(), vec![
                check("project.sum", us.add(&up) == u, w),
                check("project.membership", s.contains(&us), w),
                check("project.orthogonal", s.orthocomplement().contains(&up), w),
            ]))
        }
        Kind::Adjoint => {
            let (phi, _) = map_with_adjoint::<F>(docs)?;
            let adj = phi.adjoint_linear()?;
            let (h1, h2) = (phi.domain(), phi.codomain());
            let eq5 = h1.basis().iter().all(|u| {
                h2.basis()
                    .iter()
                    .all(|v| h2.form(&phi.apply(u), v) == h1.form(u, &adj.apply(v)))
            });
            let twice = adj.adjoint_linear()?;
            let doc = adj.to_json();
            Ok((doc, vec![
                check("adjoint.basis_pairs", eq5, || json!({ "adjoint": adj.to_json() })),
                check("adjoint.involution", twice == phi, || json!({ "adjoint_of_adjoint": twice.to_json() })),
            ]))
        }
        Kind::Induce => {
            let (phi, _) = map_with_adjoint::<F>(docs)?;
            let f = induce(&phi);
            let probes = ProbeSet::generate(phi.domain(), spec);
            let rays: Vec<Value> = probes
                .rays
                .iter()
                .map(|x| json!({ "x": x.rep_json(), "f(x)": f.apply(x).rep_json() }))
                .collect();
            let mut report = Vec::new();
            if phi.is_linear() {
                let adj = induce(&phi.adjoint_linear()?);
                let p2 = ProbeSet::generate(phi.codomain(), spec);
                report.push(verify_adjoint_pair(&f, &adj, &probes, &p2, exec));
            }
            let rank = ray_map_rank(&f, &probes);
            report.push(check("induce.rank", rank == phi.rank(), || json!({ "probe_rank": rank, "rank": phi.rank() })));
            let doc = json!({
                "domain": phi.domain().to_json(),
                "codomain": phi.codomain().to_json(),
                "probes": spec.to_json(),
                "rays": rays,
            });
            Ok((doc, report))
        }
        Kind::Piziak => {
            let (phi, _) = map_with_adjoint::<F>(docs)?;
            let probes = ProbeSet::generate(phi.domain(), spec);
            let lambda = piziak_lambda(&phi, &probes, exec)?;
            let doc = json!({ "sigma": phi.sigma().to_json(), "lambda": lambda.to_json() });
            Ok((doc, vec![ReportRecord::pass("piziak.lambda")]))
        }
        Kind::Coordinatize => {
            let (phi, adjoint) = map_with_adjoint::<F>(docs)?;
            let f = opaque(&phi);
            let g = adjoint.as_ref().map(opaque);
            let p1 = ProbeSet::generate(phi.domain(), spec);
            let p2 = ProbeSet::generate(phi.codomain(), spec);
            let result = coordinatize(&f, g.as_ref(), &p1, &p2, exec)?;
            let ratio = scalar_ratio(&result.map, &phi)?;
            let mut report = result.report.clone();
            report.push(check("coordinatize.scalar_ratio", ratio.is_some(), || json!({ "map": result.map.to_json() })));
            let mut doc = result.map.to_json();
            if let Some(k) = ratio {
                doc["kappa"] = k.to_json();
            }
            Ok((doc, report))
        }
        Kind::Transport | Kind::TransportUnitary => {
            let (phi, _) = map_with_adjoint::<F>(docs)?;
            let t = if kind == Kind::Transport { transport_linear(&phi)? } else { transport_unitary(&phi)? };
            let probes = ProbeSet::generate(phi.codomain(), spec);
            let mut report = vec![
                check("transport.linear", t.composed.is_linear(), || json!({ "composed": t.composed.to_json() })),
                check_tau(&t, &probes, exec),
            ];
            if kind == Kind::TransportUnitary {
                let again = t.composed.is_quasiunitary()?;
                let ok = again == Some((SfieldMorphism::Identity, F::one()));
                report.push(check("transport.unitary", ok, || json!({ "composed": t.composed.to_json() })));
            }
            Ok((t.to_json(), report))
        }
        Kind::PartialDecompose => {
            let (phi, adjoint) = map_with_adjoint::<F>(docs)?;
            let adjoint = match adjoint {
                Some(a) => a,
                None => phi.adjoint_linear()?,
            };
            let p1 = ProbeSet::generate(phi.domain(), spec);
            let p2 = ProbeSet::generate(phi.codomain(), spec);
            let d = decompose_partial_orthometry(&opaque(&phi), &opaque(&adjoint), &p1, &p2, exec)?;
            let doc = json!({ "A": d.a.subspace.to_json(), "B": d.b.subspace.to_json() });
            Ok((doc, d.report.clone()))
        }
    }
}
