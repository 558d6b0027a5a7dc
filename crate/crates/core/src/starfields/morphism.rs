use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{RationalQuaternion, StarField};
use crate::error::{Error, Result};

/// A morphism from the classified zoo. Every represented morphism is an
/// automorphism of a single sfield: the identity (any sfield), complex
/// conjugation (Qi only) or an inner automorphism `a ↦ q a q⁻¹` (HQ only).
///
/// `Inner(q)` is kept in canonical form: `q` is non-real and its first
/// nonzero coefficient is 1. Two morphisms are equal iff their
/// representations are, because the centre of the quaternions is ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SfieldMorphism {
    Identity,
    Conjugation,
    Inner(RationalQuaternion),
}

impl SfieldMorphism {
    /// Canonical inner automorphism for `q`; real `q` gives the identity.
    pub fn inner(q: RationalQuaternion) -> Self {
        if q.is_real() {
            return SfieldMorphism::Identity;
        }
        let lead = q
            .parts()
            .into_iter()
            .find(|p| !p.is_zero())
            .cloned()
            .expect("non-real quaternion has a nonzero part");
        SfieldMorphism::Inner(q.scale(&lead.recip()))
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, SfieldMorphism::Identity)
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &SfieldMorphism) -> Result<SfieldMorphism> {
        use SfieldMorphism::*;
        match (self, other) {
            (Identity, m) | (m, Identity) => Ok(m.clone()),
            (Conjugation, Conjugation) => Ok(Identity),
            (Inner(p), Inner(q)) => Ok(SfieldMorphism::inner(p.mul_ref(q))),
            _ => Err(Error::input(format!(
                "morphisms {self} and {other} act on different sfields"
            ))),
        }
    }

    pub fn inverse(&self) -> SfieldMorphism {
        match self {
            SfieldMorphism::Inner(q) => SfieldMorphism::inner(q.conj()),
            other => other.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SfieldMorphism::Identity => json!({ "kind": "id" }),
            SfieldMorphism::Conjugation => json!({ "kind": "conj" }),
            SfieldMorphism::Inner(q) => json!({ "kind": "inner", "q": q.to_json() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse("morphism needs a string \"kind\""))?;
        match kind {
            "id" => Ok(SfieldMorphism::Identity),
            "conj" => Ok(SfieldMorphism::Conjugation),
            "inner" => {
                let q = v
                    .get("q")
                    .ok_or_else(|| Error::parse("inner morphism needs \"q\""))?;
                let q = RationalQuaternion::from_json(q)?;
                if q.is_zero() {
                    return Err(Error::parse("inner morphism with q = 0"));
                }
                Ok(SfieldMorphism::inner(q))
            }
            other => Err(Error::parse(format!("unknown morphism kind {other:?}"))),
        }
    }
}

impl fmt::Display for SfieldMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfieldMorphism::Identity => f.write_str("id"),
            SfieldMorphism::Conjugation => f.write_str("conj"),
            SfieldMorphism::Inner(q) => write!(f, "inner({q})"),
        }
    }
}
