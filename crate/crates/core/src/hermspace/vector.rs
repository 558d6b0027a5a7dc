use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::starfields::{SfieldMorphism, StarField};

/// Coordinates of a vector with respect to the standard basis. Scalars act
/// on the left: `(α·u)ᵢ = α·uᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<F>(pub Vec<F>);

impl<F: StarField> Vector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![F::zero(); n])
    }

    /// The standard basis vector `eᵢ` of an `n`-dimensional space.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = F::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    /// `α·u`.
    pub fn scale(&self, alpha: &F) -> Self {
        Vector(self.0.iter().map(|x| alpha.mul_ref(x)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.add_ref(b)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.sub_ref(b)).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// Entrywise `uᵢ ↦ uᵢ^σ`.
    pub fn twist(&self, sigma: &SfieldMorphism) -> Self {
        if sigma.is_identity() {
            return self.clone();
        }
        Vector(self.0.iter().map(|a| a.apply_morphism(sigma)).collect())
    }

    /// Index of the leading (first nonzero) coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(F::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::parse("vector must be an array of scalars"))?;
        Ok(Vector(items.iter().map(F::from_json).collect::<Result<_>>()?))
    }
}

impl<F: StarField> fmt::Display for Vector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}
