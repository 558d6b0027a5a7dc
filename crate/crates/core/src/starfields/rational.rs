use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use super::{SfieldMorphism, SfieldTag, StarField};
use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Always `p/q`, including integers (`4/1`), so output bytes do not depend
/// on whether a value happens to be integral.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or `p` with optional sign on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Numerators over a common denominator `d > 0`: `xs[i] = nums[i] / d`.
pub(crate) fn over_common<const N: usize>(xs: [&Rational; N]) -> ([BigInt; N], BigInt) {
    let mut d = BigInt::from(1);
    for x in &xs {
        if !x.denom().is_one() && !(&d % x.denom()).is_zero() {
            d = d.lcm(x.denom());
        }
    }
    let nums = xs.map(|x| {
        if x.denom() == &d {
            x.numer().clone()
        } else {
            x.numer() * (&d / x.denom())
        }
    });
    (nums, d)
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let bound = bound.max(1);
    let num = rng.random_range(-bound..=bound);
    let den = rng.random_range(1..=bound);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(
            n.as_i64().unwrap_or_default(),
        ))),
        other => Err(Error::parse(format!("expected rational, found {other}"))),
    }
}

impl StarField for Rational {
    const TAG: SfieldTag = SfieldTag::Q;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn generators() -> Vec<Self> {
        Vec::new()
    }

    fn embed(&self) -> [Rational; 4] {
        [
            self.clone(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ]
    }

    fn from_embed(parts: [Rational; 4]) -> Self {
        let [a, ..] = parts;
        a
    }

    fn admits(m: &SfieldMorphism) -> bool {
        m.is_identity()
    }

    fn apply_morphism(&self, _m: &SfieldMorphism) -> Self {
        self.clone()
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        random_rational(rng, bound)
    }

    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn is_central(&self) -> bool {
        true
    }
}
