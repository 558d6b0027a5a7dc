use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hermspace::{HermitianSpace, Subspace, Vector};
use crate::intquat::{self, BigQuat};
use crate::starfields::StarField;

/// An element `⟨u⟩` of `P(H)`. The representative is normalized so that its
/// first nonzero coordinate is 1; `None` is the zero ray.
#[derive(Clone, Debug)]
pub struct Ray<F: StarField> {
    space: HermitianSpace<F>,
    rep: Option<Vector<F>>,
    // a primitive integer row spanning the same ray, usually much smaller
    // than the cleared normalized representative
    int: Option<Arc<Vec<BigQuat>>>,
}

impl<F: StarField> PartialEq for Ray<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.space.same_as(&other.space)
    }
}

impl<F: StarField> Eq for Ray<F> {}

// Rationals are always kept in lowest terms, so hashing numerators and
// denominators agrees with equality and skips the costly generic Ratio hash.
impl<F: StarField> Hash for Ray<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let Some(u) = &self.rep else {
            return state.write_u8(0);
        };
        state.write_u8(1);
        for x in &u.0 {
            for part in x.embed() {
                part.numer().hash(state);
                part.denom().hash(state);
            }
        }
    }
}

impl<F: StarField> Ray<F> {
    pub fn zero(space: &HermitianSpace<F>) -> Self {
        Ray {
            space: space.clone(),
            rep: None,
            int: None,
        }
    }

    /// `⟨u⟩`. Errors only when `u` has the wrong length.
    pub fn of(space: &HermitianSpace<F>, u: &Vector<F>) -> Result<Self> {
        space.check_vector(u)?;
        Ok(Self::of_unchecked(space, u))
    }

    /// The ray of an integer row, up to a positive central factor.
    pub(crate) fn from_int(space: &HermitianSpace<F>, w: Vec<BigQuat>) -> Self {
        let rep = intquat::normalize(&w).map(Vector);
        let int = rep.as_ref().map(|_| Arc::new(intquat::primitive(w)));
        Ray {
            space: space.clone(),
            rep,
            int,
        }
    }

    pub(crate) fn of_unchecked(space: &HermitianSpace<F>, u: &Vector<F>) -> Self {
        Self::from_int(space, intquat::integerize(&u.0))
    }

    /// Integer row of the ray, `None` for the zero ray.
    pub(crate) fn int_row(&self) -> Option<&[BigQuat]> {
        self.int.as_deref().map(Vec::as_slice)
    }

    pub fn space(&self) -> &HermitianSpace<F> {
        &self.space
    }

    pub fn rep(&self) -> Option<&Vector<F>> {
        self.rep.as_ref()
    }

    /// The representative, or the zero vector for the zero ray.
    pub fn vector(&self) -> Vector<F> {
        self.rep
            .clone()
            .unwrap_or_else(|| Vector::zeros(self.space.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_none()
    }

    pub fn is_proper(&self) -> bool {
        self.rep.is_some()
    }

    /// Just the representative, as used inside witnesses.
    pub fn rep_json(&self) -> Value {
        match &self.rep {
            None => json!("zero"),
            Some(v) => v.to_json(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "space": self.space.to_json(), "rep": self.rep_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = HermitianSpace::from_json(
            v.get("space")
                .ok_or_else(|| Error::parse("ray needs a \"space\""))?,
        )?;
        let rep = v.get("rep").ok_or_else(|| Error::parse("ray needs a \"rep\""))?;
        Self::rep_from_json(&space, rep)
    }

    /// Reads `"zero"` or a coordinate array in `space` and normalizes it.
    pub fn rep_from_json(space: &HermitianSpace<F>, rep: &Value) -> Result<Self> {
        if rep.as_str() == Some("zero") {
            return Ok(Self::zero(space));
        }
        let u = Vector::from_json(rep)?;
        Self::of(space, &u).map_err(|e| Error::parse(e.to_string()))
    }
}

impl<F: StarField> fmt::Display for Ray<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rep {
            None => f.write_str("0"),
            Some(v) => write!(f, "⟨{v}⟩"),
        }
    }
}

pub fn ray_of<F: StarField>(space: &HermitianSpace<F>, u: &Vector<F>) -> Result<Ray<F>> {
    Ray::of(space, u)
}

pub fn ray_perp<F: StarField>(x: &Ray<F>, y: &Ray<F>) -> Result<bool> {
    if !x.space.same_as(&y.space) {
        return Err(Error::input("rays live in different spaces"));
    }
    Ok(match (&x.rep, &y.rep) {
        (Some(u), Some(v)) => x.space.form(u, v).is_zero(),
        _ => true,
    })
}

/// `A⊥⊥`, which at finite dimension is the span of the representatives.
pub fn perp_closure<F: StarField>(space: &HermitianSpace<F>, rays: &[Ray<F>]) -> Result<Subspace<F>> {
    let mut vectors = Vec::with_capacity(rays.len());
    for r in rays {
        if !r.space.same_as(space) {
            return Err(Error::input("ray lives in a different space"));
        }
        if let Some(v) = &r.rep {
            vectors.push(v.clone());
        }
    }
    Subspace::new(space.clone(), vectors)
}
