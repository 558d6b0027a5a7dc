use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::rational::{over_common, random_rational, rational_from_json, rational_to_string};
use super::{Rational, SfieldMorphism, SfieldTag, StarField};
use crate::error::{Error, Result};

/// `re + im·i` with rational components; the involution is complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}i",
            rational_to_string(&self.re),
            rational_to_string(&self.im)
        )
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl StarField for GaussianRational {
    const TAG: SfieldTag = SfieldTag::Qi;

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn generators() -> Vec<Self> {
        vec![GaussianRational::i()]
    }

    fn embed(&self) -> [Rational; 4] {
        [
            self.re.clone(),
            self.im.clone(),
            Rational::zero(),
            Rational::zero(),
        ]
    }

    fn from_embed(parts: [Rational; 4]) -> Self {
        let [re, im, ..] = parts;
        GaussianRational::new(re, im)
    }

    fn admits(m: &SfieldMorphism) -> bool {
        matches!(m, SfieldMorphism::Identity | SfieldMorphism::Conjugation)
    }

    fn apply_morphism(&self, m: &SfieldMorphism) -> Self {
        match m {
            SfieldMorphism::Conjugation => self.conj(),
            _ => self.clone(),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        GaussianRational::new(random_rational(rng, bound), random_rational(rng, bound))
    }

    fn to_json(&self) -> Value {
        json!({ "re": rational_to_string(&self.re), "im": rational_to_string(&self.im) })
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let part = |key: &str| -> Result<Rational> {
                    map.get(key)
                        .map(rational_from_json)
                        .unwrap_or_else(|| Ok(Rational::zero()))
                };
                if map.keys().any(|k| k != "re" && k != "im") {
                    return Err(Error::TagMismatch {
                        expected: SfieldTag::Qi,
                    });
                }
                Ok(GaussianRational::new(part("re")?, part("im")?))
            }
            Value::String(_) | Value::Number(_) => {
                Ok(GaussianRational::from_rational(rational_from_json(v)?))
            }
            other => Err(Error::parse(format!("expected Gaussian rational, found {other}"))),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, &self.im * &o.re);
        }
        if self.im.is_zero() {
            return GaussianRational::new(&self.re * &o.re, &self.re * &o.im);
        }
        let ([r1, i1], den1) = over_common([&self.re, &self.im]);
        let ([r2, i2], den2) = over_common([&o.re, &o.im]);
        let den = den1 * den2;
        GaussianRational::new(
            Rational::new(&r1 * &r2 - &i1 * &i2, den.clone()),
            Rational::new(&r1 * &i2 + &i1 * &r2, den),
        )
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn is_central(&self) -> bool {
        true
    }
}
