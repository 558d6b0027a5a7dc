use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::ray::Ray;
use crate::hermspace::{HermitianSpace, SemilinearMap};
use crate::intquat::{self, BigQuat, IntMorphism};
use crate::starfields::StarField;

pub type OracleFn<F> = Arc<dyn Fn(&Ray<F>) -> Ray<F> + Send + Sync>;

#[derive(Clone)]
pub enum RayAction<F: StarField> {
    Induced(SemilinearMap<F>),
    /// Any total function on rays. It is called concurrently.
    Oracle(OracleFn<F>),
}

type Memo<F> = Arc<Mutex<HashMap<Ray<F>, Ray<F>>>>;

/// An induced map's morphism and images, cleared of denominators.
#[derive(Debug)]
struct IntImages {
    sigma: IntMorphism,
    rows: Vec<Vec<BigQuat>>,
}

/// A map `P(H₁) → P(H₂)`. Images are memoized; clones share the memo.
#[derive(Clone)]
pub struct RayMap<F: StarField> {
    domain: HermitianSpace<F>,
    codomain: HermitianSpace<F>,
    action: RayAction<F>,
    int: Option<Arc<IntImages>>,
    memo: Memo<F>,
}

impl<F: StarField> RayMap<F> {
    /// `P(φ)`.
    pub fn induced(phi: SemilinearMap<F>) -> Self {
        let rows: Vec<Vec<F>> = phi.images().iter().map(|v| v.0.clone()).collect();
        let int = IntImages {
            sigma: IntMorphism::new(phi.sigma()),
            rows: intquat::integerize_rows(&rows),
        };
        RayMap {
            int: Some(Arc::new(int)),
            domain: phi.domain().clone(),
            codomain: phi.codomain().clone(),
            action: RayAction::Induced(phi),
            memo: Memo::default(),
        }
    }

    pub fn oracle(
        domain: HermitianSpace<F>,
        codomain: HermitianSpace<F>,
        f: impl Fn(&Ray<F>) -> Ray<F> + Send + Sync + 'static,
    ) -> Self {
        RayMap {
            domain,
            codomain,
            action: RayAction::Oracle(Arc::new(f)),
            int: None,
            memo: Memo::default(),
        }
    }

    pub fn identity(space: HermitianSpace<F>) -> Self {
        Self::induced(SemilinearMap::identity(space))
    }

    pub fn domain(&self) -> &HermitianSpace<F> {
        &self.domain
    }

    pub fn codomain(&self) -> &HermitianSpace<F> {
        &self.codomain
    }

    pub fn action(&self) -> &RayAction<F> {
        &self.action
    }

    /// The inducing map, when there is one.
    pub fn semilinear(&self) -> Option<&SemilinearMap<F>> {
        match &self.action {
            RayAction::Induced(phi) => Some(phi),
            RayAction::Oracle(_) => None,
        }
    }

    pub fn apply(&self, x: &Ray<F>) -> Ray<F> {
        if let Some(y) = self.memo.lock().expect("memo lock").get(x) {
            return y.clone();
        }
        let y = self.compute(x);
        self.memo.lock().expect("memo lock").insert(x.clone(), y.clone());
        y
    }

    fn compute(&self, x: &Ray<F>) -> Ray<F> {
        match &self.action {
            RayAction::Induced(phi) => match (x.int_row(), &self.int) {
                (None, _) => Ray::zero(&self.codomain),
                (Some(u), Some(int)) => {
                    Ray::from_int(&self.codomain, intquat::combine(&int.sigma, u, &int.rows, self.codomain.dim()))
                }
                (Some(_), None) => Ray::of_unchecked(&self.codomain, &phi.apply(&x.vector())),
            },
            RayAction::Oracle(f) => f(x),
        }
    }
}

impl<F: StarField> fmt::Debug for RayMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.action {
            RayAction::Induced(phi) => f.debug_tuple("RayMap::Induced").field(phi).finish(),
            RayAction::Oracle(_) => f
                .debug_struct("RayMap::Oracle")
                .field("domain_dim", &self.domain.dim())
                .field("codomain_dim", &self.codomain.dim())
                .finish(),
        }
    }
}
