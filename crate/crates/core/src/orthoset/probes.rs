use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::ray::Ray;
use crate::error::{Error, Result};
use crate::hermspace::{HermitianSpace, Vector};
use crate::starfields::StarField;

/// Bound on numerators and denominators of random probe coordinates.
pub const PROBE_BOUND: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeSpec {
    pub seed: u64,
    /// Total number of rays, including the zero ray and the basis rays.
    pub count: usize,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec { seed: 0, count: 256 }
    }
}

impl ProbeSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        ProbeSpec { seed, count }
    }

    pub fn to_json(&self) -> Value {
        json!({ "seed": self.seed, "count": self.count })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse(format!("probe spec needs an integer {name:?}")))
        };
        Ok(ProbeSpec {
            seed: field("seed")?,
            count: field("count")? as usize,
        })
    }
}

/// A finite, reproducible sample of `P(H)`: the zero ray, the standard basis
/// rays and then distinct pseudo-random rays.
#[derive(Clone, Debug)]
pub struct ProbeSet<F: StarField> {
    pub rays: Vec<Ray<F>>,
    pub spec: ProbeSpec,
}

impl<F: StarField> ProbeSet<F> {
    pub fn generate(space: &HermitianSpace<F>, spec: ProbeSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut rays = vec![Ray::zero(space)];
        rays.extend(space.basis().iter().map(|e| Ray::of_unchecked(space, e)));
        let mut seen: HashSet<Ray<F>> = rays.iter().cloned().collect();
        let mut attempts = 0usize;
        while rays.len() < spec.count && attempts < 20 * spec.count {
            attempts += 1;
            let u = random_vector(space.dim(), &mut rng);
            let r = Ray::of_unchecked(space, &u);
            if seen.insert(r.clone()) {
                rays.push(r);
            }
        }
        ProbeSet { rays, spec }
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn proper(&self) -> impl Iterator<Item = &Ray<F>> {
        self.rays.iter().filter(|r| r.is_proper())
    }
}

/// Coordinates are zero with probability 1/4, so sparse rays show up too.
pub fn random_vector<F: StarField, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector<F> {
    Vector(
        (0..n)
            .map(|_| {
                if rng.random_range(0..4) == 0 {
                    F::zero()
                } else {
                    F::random(rng, PROBE_BOUND)
                }
            })
            .collect(),
    )
}
