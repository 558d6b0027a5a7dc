//! Named verification suites. Each suite runs either on caller-supplied
//! inputs or, when none are given, on seeded random instances over all
//! three sfields. Records come back sorted by check name.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::correspondence::{
    check_tau, decompose_partial_orthometry, induce, partial_wigner, piziak_lambda, scalar_ratio,
    transport_linear, transport_unitary, wigner_reconstruct,
};
use crate::error::{Error, Result};
use crate::hermspace::{generalized_inverse, HermitianSpace, SemilinearMap, Subspace, Vector};
use crate::orthoset::{
    check_axioms, dacey_witness, frechet_check, is_dacey_witness, is_linearity_witness,
    linearity_witness, ray_map_rank, verify_adjoint_pair, ProbeSet, ProbeSpec, Ray, RayMap,
};
use crate::par::Execution;
use crate::random;
use crate::report::{timed, ReportRecord};
use crate::starfields::{GaussianRational, Rational, RationalQuaternion, SfieldTag, StarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Linearity,
    Dacey,
    Frechet,
    Adjoint,
    Piziak,
    Wigner,
    Transport,
    Partial,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Axioms,
        Suite::Linearity,
        Suite::Dacey,
        Suite::Frechet,
        Suite::Adjoint,
        Suite::Piziak,
        Suite::Wigner,
        Suite::Transport,
        Suite::Partial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Linearity => "linearity",
            Suite::Dacey => "dacey",
            Suite::Frechet => "frechet",
            Suite::Adjoint => "adjoint",
            Suite::Piziak => "piziak",
            Suite::Wigner => "wigner",
            Suite::Transport => "transport",
            Suite::Partial => "partial",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::EACH
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite {s:?}")))
    }
}

/// Optional inputs read from files. A missing input is replaced by
/// generated instances.
#[derive(Clone, Debug)]
pub struct Inputs<F: StarField> {
    pub space: Option<HermitianSpace<F>>,
    pub map: Option<SemilinearMap<F>>,
    /// A claimed adjoint of `map`, to be verified rather than computed.
    pub adjoint: Option<SemilinearMap<F>>,
    pub subspace: Option<Subspace<F>>,
}

impl<F: StarField> Default for Inputs<F> {
    fn default() -> Self {
        Inputs {
            space: None,
            map: None,
            adjoint: None,
            subspace: None,
        }
    }
}

impl<F: StarField> Inputs<F> {
    fn is_empty(&self) -> bool {
        self.space.is_none() && self.map.is_none() && self.subspace.is_none()
    }

    fn space(&self) -> Option<HermitianSpace<F>> {
        self.space
            .clone()
            .or_else(|| self.subspace.as_ref().map(|s| s.space().clone()))
            .or_else(|| self.map.as_ref().map(|m| m.domain().clone()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub probes: ProbeSpec,
    pub exec: Execution,
}

/// Runs a suite on generated instances over Q, Qi and HQ.
pub fn run_generated(config: &SuiteConfig) -> Vec<ReportRecord> {
    let mut out = Vec::new();
    out.extend(run_suite::<Rational>(config, &Inputs::default()));
    out.extend(run_suite::<GaussianRational>(config, &Inputs::default()));
    out.extend(run_suite::<RationalQuaternion>(config, &Inputs::default()));
    out.sort_by(|a, b| a.check.cmp(&b.check));
    out
}

/// Runs a suite over one sfield, on `inputs` where given.
pub fn run_suite<F: StarField>(config: &SuiteConfig, inputs: &Inputs<F>) -> Vec<ReportRecord> {
    let mut out = Vec::new();
    for suite in config.suite.members() {
        let ctx = Ctx::<F>::new(suite, config, inputs);
        let records = match suite {
            Suite::Axioms => ctx.axioms(),
            Suite::Linearity => ctx.linearity(),
            Suite::Dacey => ctx.dacey(),
            Suite::Frechet => ctx.frechet(),
            Suite::Adjoint => ctx.adjoint(),
            Suite::Piziak => ctx.piziak(),
            Suite::Wigner => ctx.wigner(),
            Suite::Transport => ctx.transport(),
            Suite::Partial => ctx.partial(),
            Suite::All => unreachable!("expanded above"),
        };
        out.extend(records);
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    out
}

struct Ctx<'a, F: StarField> {
    suite: Suite,
    config: &'a SuiteConfig,
    inputs: &'a Inputs<F>,
    generated: bool,
}

/// Prefixes generated checks with the sfield so the three runs stay apart.
fn name<F: StarField>(generated: bool, check: &str) -> String {
    if generated {
        format!("{}/{check}", F::TAG)
    } else {
        check.to_string()
    }
}

fn fail(check: &str, w: Value) -> Result<Option<Value>> {
    let _ = check;
    Ok(Some(w))
}

impl<'a, F: StarField> Ctx<'a, F> {
    fn new(suite: Suite, config: &'a SuiteConfig, inputs: &'a Inputs<F>) -> Self {
        Ctx {
            suite,
            config,
            inputs,
            generated: inputs.is_empty(),
        }
    }

    fn exec(&self) -> Execution {
        self.config.exec
    }

    fn spec(&self) -> ProbeSpec {
        self.config.probes
    }

    /// Instance generator, seeded by the probe seed, the suite and the sfield.
    fn rng(&self) -> ChaCha8Rng {
        let salt = (self.suite as u64) << 8 | F::TAG as u64;
        ChaCha8Rng::seed_from_u64(self.spec().seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn name(&self, check: &str) -> String {
        name::<F>(self.generated, &format!("{}.{check}", self.suite))
    }

    fn record(&self, check: &str, body: impl FnOnce() -> Result<Option<Value>>) -> ReportRecord {
        timed(&self.name(check), body)
    }

    fn probes(&self, h: &HermitianSpace<F>) -> ProbeSet<F> {
        ProbeSet::generate(h, self.spec())
    }

    /// The input space, or `count` generated spaces.
    fn spaces(&self, rng: &mut ChaCha8Rng, count: usize, dims: std::ops::RangeInclusive<usize>) -> Vec<HermitianSpace<F>> {
        match self.inputs.space() {
            Some(h) => vec![h],
            None => (0..count)
                .map(|_| {
                    let n = rng.random_range(dims.clone());
                    random::space(n, rng)
                })
                .collect(),
        }
    }

    fn axioms(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let mut out = Vec::new();
        for h in self.spaces(&mut rng, 1, 4..=4) {
            for r in check_axioms(&h, &self.probes(&h), self.exec()) {
                out.push(ReportRecord {
                    check: name::<F>(self.generated, &r.check),
                    ..r
                });
            }
        }
        out
    }

    /// Random pairs of distinct proper probes.
    fn pairs(&self, probes: &ProbeSet<F>, count: usize, rng: &mut ChaCha8Rng) -> Vec<(Ray<F>, Ray<F>)> {
        let proper: Vec<&Ray<F>> = probes.proper().collect();
        if proper.len() < 2 {
            return Vec::new();
        }
        (0..count)
            .map(|_| {
                let i = rng.random_range(0..proper.len());
                let mut j = rng.random_range(0..proper.len() - 1);
                if j >= i {
                    j += 1;
                }
                (proper[i].clone(), proper[j].clone())
            })
            .collect()
    }

    fn linearity(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let spaces = self.spaces(&mut rng, 1, 3..=4);
        vec![self.record("witness", || {
            for h in &spaces {
                let probes = self.probes(h);
                for (x, y) in self.pairs(&probes, 100, &mut rng) {
                    let z = linearity_witness(&x, &y)?;
                    if !is_linearity_witness(&x, &y, &z)? {
                        return fail("witness", json!({ "x": x.rep_json(), "y": y.rep_json(), "z": z.rep_json() }));
                    }
                }
            }
            Ok(None)
        })]
    }

    fn dacey(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let spaces = self.spaces(&mut rng, 2, 2..=4);
        vec![self.record("witness", || {
            for h in &spaces {
                let probes = self.probes(h);
                for k in 0..10 {
                    let s = match &self.inputs.subspace {
                        Some(s) => s.clone(),
                        None => {
                            let dim = rng.random_range(0..=h.dim());
                            random::subspace(h, dim, &mut rng)
                        }
                    };
                    let x = probes.proper().nth(k * 7 % probes.len().max(1)).cloned();
                    let Some(x) = x else { continue };
                    let (y, z) = dacey_witness(&s, &x)?;
                    if !is_dacey_witness(&s, &x, &y, &z)? {
                        return fail("witness", json!({ "x": x.rep_json(), "y": y.rep_json(), "z": z.rep_json() }));
                    }
                    let perp = s.orthocomplement();
                    if perp.orthocomplement() != s || s.dim() + perp.dim() != h.dim() {
                        return fail("witness", json!({ "subspace": s.to_json() }));
                    }
                }
            }
            Ok(None)
        })]
    }

    fn frechet(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let mut out = Vec::new();
        for h in self.spaces(&mut rng, 1, 3..=3) {
            let r = frechet_check(&h, &self.probes(&h), self.exec());
            out.push(ReportRecord {
                check: self.name("separator"),
                ..r
            });
        }
        out
    }

    /// The input map or `count` generated ones, made by `make`.
    fn maps(
        &self,
        rng: &mut ChaCha8Rng,
        count: usize,
        dims: std::ops::RangeInclusive<usize>,
        make: impl Fn(&HermitianSpace<F>, &mut ChaCha8Rng) -> SemilinearMap<F>,
    ) -> Vec<SemilinearMap<F>> {
        match &self.inputs.map {
            Some(m) => vec![m.clone()],
            None => self
                .spaces(rng, count, dims)
                .iter()
                .map(|h| make(h, rng))
                .collect(),
        }
    }

    fn adjoint(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let maps = self.maps(&mut rng, 3, 2..=4, |h, rng| {
            let n2 = rng.random_range(2..=4);
            let h2 = random::space(n2, rng);
            random::linear_map(h, &h2, rng)
        });
        let mut pair = Vec::new();
        let mut rank = Vec::new();
        for phi in &maps {
            let adj = match &self.inputs.adjoint {
                Some(a) => Ok(a.clone()),
                None => phi.adjoint_linear(),
            };
            let (f, p1, p2) = (induce(phi), self.probes(phi.domain()), self.probes(phi.codomain()));
            pair.push(match &adj {
                Ok(a) => {
                    let r = verify_adjoint_pair(&f, &induce(a), &p1, &p2, self.exec());
                    ReportRecord { check: self.name("pair"), ..r }
                }
                Err(e) => ReportRecord::error(self.name("pair"), e),
            });
            rank.push(self.record("rank", || {
                let a = adj.clone()?;
                let (r1, r2) = (ray_map_rank(&f, &p1), ray_map_rank(&induce(&a), &p2));
                Ok((r1 != r2).then(|| json!({ "rank": r1, "adjoint_rank": r2 })))
            }));
        }
        first_failure_or_pass(pair)
            .into_iter()
            .chain(first_failure_or_pass(rank))
            .collect()
    }

    fn quasiunitaries(&self, rng: &mut ChaCha8Rng, count: usize, dims: std::ops::RangeInclusive<usize>) -> Vec<SemilinearMap<F>> {
        self.maps(rng, count, dims, |h, rng| random::quasiunitary(h, rng))
    }

    fn piziak(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let maps = self.quasiunitaries(&mut rng, 3, 2..=4);
        vec![self.record("lambda", || {
            for phi in &maps {
                let lambda = piziak_lambda(phi, &self.probes(phi.domain()), self.exec())?;
                if phi.is_bijective() {
                    if let Some((_, l)) = phi.is_quasiunitary()? {
                        if l != lambda {
                            return fail("lambda", json!({ "piziak": lambda.to_json(), "certified": l.to_json() }));
                        }
                    }
                }
            }
            Ok(None)
        })]
    }

    fn wigner(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let maps = self.quasiunitaries(&mut rng, 2, 3..=3);
        let mut out = vec![self.record("round_trip", || {
            for phi0 in &maps {
                let f = induce(phi0);
                let finv = induce(&phi0.inverse()?);
                let (p1, p2) = (self.probes(phi0.domain()), self.probes(phi0.codomain()));
                let w = wigner_reconstruct(&f, &finv, &p1, &p2, self.exec())?;
                if scalar_ratio(w.map(), phi0)?.is_none() {
                    return fail("round_trip", json!({ "recovered": w.map().to_json() }));
                }
            }
            Ok(None)
        })];
        if self.generated {
            out.push(self.record("negative_control", || {
                let h = random::space::<F, _>(3, &mut rng);
                let mut images = h.basis();
                images[1] = images[1].add(&images[0]);
                let shear = SemilinearMap::linear(h.clone(), h.clone(), images)?;
                let p = self.probes(&h);
                match wigner_reconstruct(&induce(&shear), &induce(&shear.inverse()?), &p, &p, self.exec()) {
                    Err(Error::NotOrthoiso { .. }) => Ok(None),
                    other => Ok(Some(json!({ "unexpected": format!("{:?}", other.map(|w| w.lambda.to_json())) }))),
                }
            }));
        }
        out
    }

    fn transport(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let maps = self.quasiunitaries(&mut rng, 2, 2..=4);
        let mut out = vec![self.record("linear", || {
            for phi in &maps {
                let t = transport_linear(phi)?;
                if !t.composed.is_linear() {
                    return fail("linear", json!({ "composed": t.composed.to_json() }));
                }
                let tau = check_tau(&t, &self.probes(phi.codomain()), self.exec());
                if let Some(w) = tau.witness {
                    return fail("linear", w);
                }
            }
            Ok(None)
        })];
        out.push(self.record("unitary", || {
            for phi in &maps {
                if !phi.is_bijective() || phi.is_quasiunitary()?.is_none() {
                    continue;
                }
                let t = transport_unitary(phi)?;
                let again = t.composed.is_quasiunitary()?;
                if again != Some((crate::starfields::SfieldMorphism::Identity, F::one())) {
                    return fail("unitary", json!({ "composed": t.composed.to_json() }));
                }
                let tau = check_tau(&t, &self.probes(phi.codomain()), self.exec());
                if let Some(w) = tau.witness {
                    return fail("unitary", w);
                }
            }
            Ok(None)
        }));
        out
    }

    fn partial(&self) -> Vec<ReportRecord> {
        let mut rng = self.rng();
        let cases: Vec<(SemilinearMap<F>, Option<SemilinearMap<F>>)> = match &self.inputs.map {
            Some(m) => vec![(m.clone(), self.inputs.adjoint.clone())],
            None => {
                let h = random::space::<F, _>(4, &mut rng);
                let d = random::partial_isometry(&h, 3, false, &mut rng);
                let g = generalized_inverse(&d).ok();
                vec![(d.map, g)]
            }
        };
        let mut out = Vec::new();
        for (phi, adj) in cases {
            let adj = match adj {
                Some(a) => Ok(a),
                None => phi.adjoint_linear(),
            };
            let (f, p1, p2) = (induce(&phi), self.probes(phi.domain()), self.probes(phi.codomain()));
            // one decomposition serves both records when the core is large enough
            let wigner = adj.clone().and_then(|a| {
                let g = induce(&a);
                if phi.rank() < 3 {
                    decompose_partial_orthometry(&f, &g, &p1, &p2, self.exec()).map(|d| (d, None))
                } else {
                    partial_wigner(&f, &g, &p1, &p2, self.exec()).map(|w| (w.decomposition.clone(), Some(w)))
                }
            });
            out.push(self.record("decompose", || {
                let (d, _) = wigner.clone()?;
                let (a, b) = (phi.kernel().orthocomplement(), phi.image());
                if d.a.subspace != a || d.b.subspace != b {
                    return fail("decompose", json!({ "A": d.a.subspace.to_json(), "B": d.b.subspace.to_json() }));
                }
                Ok(None)
            }));
            out.push(self.record("wigner", || {
                let Some(w) = wigner.clone()?.1 else {
                    return Ok(None);
                };
                if scalar_ratio(&w.descriptor.map, &phi)?.is_none() {
                    return fail("wigner", json!({ "recovered": w.descriptor.map.to_json() }));
                }
                Ok(None)
            }));
        }
        out
    }
}

/// One record per check name: the first failure, or the first pass.
fn first_failure_or_pass(records: Vec<ReportRecord>) -> Option<ReportRecord> {
    let first = records.first().cloned();
    records.into_iter().find(|r| !r.passed()).or(first)
}

/// Vector of all-zero coordinates, used by callers that need a placeholder.
pub fn zero_vector<F: StarField>(n: usize) -> Vector<F> {
    Vector::zeros(n)
}

/// Whether a ray map is induced by the given semilinear map on all probes.
pub fn agrees_on_probes<F: StarField>(f: &RayMap<F>, phi: &SemilinearMap<F>, probes: &ProbeSet<F>) -> bool {
    let g = induce(phi);
    probes.rays.iter().all(|x| f.apply(x) == g.apply(x))
}

/// Sfield tag of a JSON space, map or subspace document.
pub fn tag_of(v: &Value) -> Result<SfieldTag> {
    let space = v
        .get("sfield")
        .map(|_| v)
        .or_else(|| v.get("space"))
        .or_else(|| v.get("domain"))
        .ok_or_else(|| Error::parse("cannot find an sfield tag"))?;
    space
        .get("sfield")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("space needs a string \"sfield\""))?
        .parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn generated_suites_pass() {
        let config = SuiteConfig {
            suite: Suite::All,
            probes: ProbeSpec::new(3, 24),
            exec: Execution::default(),
        };
        let records = run_generated(&config);
        assert!(records.len() >= 9 * 3);
        for r in &records {
            assert!(r.passed(), "{}", r.to_json(false));
        }
        let again = run_generated(&config);
        let bytes = |rs: &[ReportRecord]| rs.iter().map(|r| r.to_json(false).to_string()).collect::<Vec<_>>();
        assert_eq!(bytes(&records), bytes(&again));
    }
}
