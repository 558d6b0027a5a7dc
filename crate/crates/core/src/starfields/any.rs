use serde_json::Value;

use super::{GaussianRational, Rational, RationalQuaternion, SfieldMorphism, SfieldTag, StarField};
use crate::error::{Error, Result};

/// A scalar tagged with its sfield, for code that only learns the sfield
/// at runtime (file formats, the CLI).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Qi(GaussianRational),
    HQ(RationalQuaternion),
}

macro_rules! dispatch_binary {
    ($a:expr, $b:expr, $x:ident, $y:ident => $body:expr) => {
        match ($a, $b) {
            (Scalar::Q($x), Scalar::Q($y)) => Ok(Scalar::Q($body)),
            (Scalar::Qi($x), Scalar::Qi($y)) => Ok(Scalar::Qi($body)),
            (Scalar::HQ($x), Scalar::HQ($y)) => Ok(Scalar::HQ($body)),
            (x, _) => Err(Error::TagMismatch { expected: x.tag() }),
        }
    };
}

impl Scalar {
    pub fn tag(&self) -> SfieldTag {
        match self {
            Scalar::Q(_) => SfieldTag::Q,
            Scalar::Qi(_) => SfieldTag::Qi,
            Scalar::HQ(_) => SfieldTag::HQ,
        }
    }

    pub fn from_json(tag: SfieldTag, v: &Value) -> Result<Self> {
        Ok(match tag {
            SfieldTag::Q => Scalar::Q(Rational::from_json(v)?),
            SfieldTag::Qi => Scalar::Qi(GaussianRational::from_json(v)?),
            SfieldTag::HQ => Scalar::HQ(RationalQuaternion::from_json(v)?),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Q(a) => a.to_json(),
            Scalar::Qi(a) => a.to_json(),
            Scalar::HQ(a) => a.to_json(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, other, x, y => x.mul_ref(y))
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, other, x, y => x.add_ref(y))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.inv()?),
            Scalar::Qi(a) => Scalar::Qi(a.inv()?),
            Scalar::HQ(a) => Scalar::HQ(a.inv()?),
        })
    }
}

/// `a*` for the involution of sfield `tag`.
pub fn involution(tag: SfieldTag, a: &Scalar) -> Result<Scalar> {
    if a.tag() != tag {
        return Err(Error::TagMismatch { expected: tag });
    }
    Ok(match a {
        Scalar::Q(x) => Scalar::Q(x.conj()),
        Scalar::Qi(x) => Scalar::Qi(x.conj()),
        Scalar::HQ(x) => Scalar::HQ(x.conj()),
    })
}

/// `a^σ`; fails when `σ` does not act on the sfield of `a`.
pub fn apply_morphism(sigma: &SfieldMorphism, a: &Scalar) -> Result<Scalar> {
    fn go<F: StarField>(sigma: &SfieldMorphism, x: &F) -> Result<F> {
        F::check_morphism(sigma)?;
        Ok(x.apply_morphism(sigma))
    }
    Ok(match a {
        Scalar::Q(x) => Scalar::Q(go(sigma, x)?),
        Scalar::Qi(x) => Scalar::Qi(go(sigma, x)?),
        Scalar::HQ(x) => Scalar::HQ(go(sigma, x)?),
    })
}
