//! Exact arithmetic for the three supported involutive skew fields:
//! the rationals, the Gaussian rationals and the rational quaternions.
//!
//! Each field implements [`StarField`], which bundles the ring operations,
//! the involution, the action of the classified morphisms and the text
//! syntax used by the file formats. Code elsewhere in the crate is generic
//! over `F: StarField`; [`Scalar`] is the tagged form used at I/O boundaries.

mod any;
mod gaussian;
mod morphism;
mod quaternion;
mod rational;

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

pub use any::{apply_morphism, involution, Scalar};
pub use gaussian::GaussianRational;
pub use morphism::SfieldMorphism;
pub use quaternion::RationalQuaternion;
pub use rational::{parse_rational, random_rational, rational_to_string, Rational};

/// Which of the supported *-sfields a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SfieldTag {
    Q,
    Qi,
    HQ,
}

impl SfieldTag {
    pub const ALL: [SfieldTag; 3] = [SfieldTag::Q, SfieldTag::Qi, SfieldTag::HQ];

    pub fn as_str(self) -> &'static str {
        match self {
            SfieldTag::Q => "Q",
            SfieldTag::Qi => "Qi",
            SfieldTag::HQ => "HQ",
        }
    }
}

impl Display for SfieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SfieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(SfieldTag::Q),
            "Qi" => Ok(SfieldTag::Qi),
            "HQ" => Ok(SfieldTag::HQ),
            other => Err(Error::parse(format!("unknown sfield tag {other:?}"))),
        }
    }
}

/// A skew field with an involutory antiautomorphism, together with the
/// morphisms of the classified zoo that act on it.
pub trait StarField:
    Clone
    + Debug
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const TAG: SfieldTag;

    /// The involution `a ↦ a*`.
    fn conj(&self) -> Self;

    /// Two-sided inverse.
    fn inv(&self) -> Result<Self>;

    fn from_rational(r: Rational) -> Self;

    /// `Some` iff the value lies in the prime field, which is the centre
    /// of every supported sfield.
    fn as_rational(&self) -> Option<Rational>;

    /// Generators of the sfield over the rationals (`i` for Qi, `i, j` for HQ).
    fn generators() -> Vec<Self>;

    /// Coordinates of the value inside the rational quaternions, which
    /// contain all three fields as subrings.
    fn embed(&self) -> [Rational; 4];

    /// Whether `m` is a morphism of this sfield.
    /// Inverse of `embed`; parts outside the sfield are ignored.
    fn from_embed(parts: [Rational; 4]) -> Self;

    fn admits(m: &SfieldMorphism) -> bool;

    /// `a^σ`. Callers must have checked `admits`.
    fn apply_morphism(&self, m: &SfieldMorphism) -> Self;

    /// Random value whose components have numerators in `[-bound, bound]`
    /// and denominators in `[1, bound]`.
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn is_central(&self) -> bool {
        Self::generators()
            .iter()
            .all(|g| self.mul_ref(g) == g.mul_ref(self))
    }

    /// Checks `admits` and reports a mismatch as an input error.
    fn check_morphism(m: &SfieldMorphism) -> Result<()> {
        if Self::admits(m) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "morphism {m} is not a morphism of {}",
                Self::TAG
            )))
        }
    }

    /// The inner automorphism `a ↦ κ a κ⁻¹`, classified into the zoo.
    fn inner_morphism(kappa: &Self) -> Result<SfieldMorphism> {
        if kappa.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if kappa.is_central() {
            return Ok(SfieldMorphism::Identity);
        }
        let e = kappa.embed();
        Ok(SfieldMorphism::inner(RationalQuaternion::new(
            e[0].clone(),
            e[1].clone(),
            e[2].clone(),
            e[3].clone(),
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tags_round_trip_through_text() {
        for tag in SfieldTag::ALL {
            assert_eq!(tag.as_str().parse::<SfieldTag>().unwrap(), tag);
        }
        assert!("R".parse::<SfieldTag>().is_err());
    }

    #[test]
    fn inner_morphism_of_central_scalar_is_identity() {
        let r = RationalQuaternion::from_rational(q(3, 2));
        assert_eq!(
            RationalQuaternion::inner_morphism(&r).unwrap(),
            SfieldMorphism::Identity
        );
        let i = RationalQuaternion::new(q(0, 1), q(2, 1), q(0, 1), q(0, 1));
        assert_eq!(
            RationalQuaternion::inner_morphism(&i).unwrap(),
            SfieldMorphism::inner(RationalQuaternion::i())
        );
        assert!(GaussianRational::inner_morphism(&GaussianRational::i())
            .unwrap()
            .is_identity());
    }
}
