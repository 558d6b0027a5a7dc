use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use num_bigint::BigInt;

use super::rational::{over_common, random_rational, rational_from_json, rational_to_string};
use super::{Rational, SfieldMorphism, SfieldTag, StarField};
use crate::error::{Error, Result};

/// `a + b·i + c·j + d·k` over the rationals, with `i² = j² = k² = ijk = −1`.
/// The involution is quaternion conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalQuaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl RationalQuaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        RationalQuaternion { a, b, c, d }
    }

    fn unit(idx: usize) -> Self {
        let mut parts = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        parts[idx] = Rational::one();
        let [a, b, c, d] = parts;
        RationalQuaternion::new(a, b, c, d)
    }

    pub fn i() -> Self {
        Self::unit(1)
    }

    pub fn j() -> Self {
        Self::unit(2)
    }

    pub fn k() -> Self {
        Self::unit(3)
    }

    /// `N(q) = q·q* = a² + b² + c² + d²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn parts(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RationalQuaternion::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}i + {}j + {}k",
            rational_to_string(&self.a),
            rational_to_string(&self.b),
            rational_to_string(&self.c),
            rational_to_string(&self.d)
        )
    }
}

impl Add for RationalQuaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        RationalQuaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for RationalQuaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        RationalQuaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for RationalQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        RationalQuaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for RationalQuaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Zero for RationalQuaternion {
    fn zero() -> Self {
        RationalQuaternion::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.is_real()
    }
}

impl One for RationalQuaternion {
    fn one() -> Self {
        Self::unit(0)
    }
}

impl StarField for RationalQuaternion {
    const TAG: SfieldTag = SfieldTag::HQ;

    fn conj(&self) -> Self {
        RationalQuaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    fn from_rational(r: Rational) -> Self {
        RationalQuaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    fn as_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.a.clone())
    }

    fn generators() -> Vec<Self> {
        vec![RationalQuaternion::i(), RationalQuaternion::j()]
    }

    fn embed(&self) -> [Rational; 4] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    fn from_embed(parts: [Rational; 4]) -> Self {
        let [a, b, c, d] = parts;
        RationalQuaternion::new(a, b, c, d)
    }

    fn admits(m: &SfieldMorphism) -> bool {
        matches!(m, SfieldMorphism::Identity | SfieldMorphism::Inner(_))
    }

    fn apply_morphism(&self, m: &SfieldMorphism) -> Self {
        match m {
            SfieldMorphism::Inner(q) => {
                // q a q⁻¹ = q a q* / N(q)
                let n = q.norm();
                q.mul_ref(self).mul_ref(&q.conj()).scale(&n.recip())
            }
            _ => self.clone(),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        RationalQuaternion::new(
            random_rational(rng, bound),
            random_rational(rng, bound),
            random_rational(rng, bound),
            random_rational(rng, bound),
        )
    }

    fn to_json(&self) -> Value {
        json!({
            "a": rational_to_string(&self.a),
            "b": rational_to_string(&self.b),
            "c": rational_to_string(&self.c),
            "d": rational_to_string(&self.d),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                if map.keys().any(|k| !matches!(k.as_str(), "a" | "b" | "c" | "d")) {
                    return Err(Error::TagMismatch {
                        expected: SfieldTag::HQ,
                    });
                }
                let part = |key: &str| -> Result<Rational> {
                    map.get(key)
                        .map(rational_from_json)
                        .unwrap_or_else(|| Ok(Rational::zero()))
                };
                Ok(RationalQuaternion::new(
                    part("a")?,
                    part("b")?,
                    part("c")?,
                    part("d")?,
                ))
            }
            Value::String(_) | Value::Number(_) => {
                Ok(RationalQuaternion::from_rational(rational_from_json(v)?))
            }
            other => Err(Error::parse(format!("expected quaternion, found {other}"))),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if o.is_real() {
            return self.scale(&o.a);
        }
        if self.is_real() {
            return o.scale(&self.a);
        }
        // integer products over a common denominator, one reduction per part
        let ([a1, b1, c1, d1], den1) = over_common(self.parts());
        let ([a2, b2, c2, d2], den2) = over_common(o.parts());
        let den = den1 * den2;
        let part = |n: BigInt| Rational::new(n, den.clone());
        RationalQuaternion::new(
            part(&a1 * &a2 - &b1 * &b2 - &c1 * &c2 - &d1 * &d2),
            part(&a1 * &b2 + &b1 * &a2 + &c1 * &d2 - &d1 * &c2),
            part(&a1 * &c2 - &b1 * &d2 + &c1 * &a2 + &d1 * &b2),
            part(&a1 * &d2 + &b1 * &c2 - &c1 * &b2 + &d1 * &a2),
        )
    }

    fn add_ref(&self, o: &Self) -> Self {
        RationalQuaternion::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        RationalQuaternion::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }

    fn is_central(&self) -> bool {
        self.is_real()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn quat(a: i64, b: i64, c: i64, d: i64) -> RationalQuaternion {
        RationalQuaternion::new(r(a), r(b), r(c), r(d))
    }

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (
            RationalQuaternion::i(),
            RationalQuaternion::j(),
            RationalQuaternion::k(),
        );
        let minus_one = -RationalQuaternion::one();
        assert_eq!(i.mul_ref(&j), k);
        assert_eq!(j.mul_ref(&k), i);
        assert_eq!(k.mul_ref(&i), j);
        assert_eq!(j.mul_ref(&i), -k.clone());
        assert_eq!(i.mul_ref(&i), minus_one);
        assert_eq!(j.mul_ref(&j), minus_one);
        assert_eq!(k.mul_ref(&k), minus_one);
        assert_eq!(i.mul_ref(&j).mul_ref(&k), minus_one);
    }

    #[test]
    fn conjugation_of_one_plus_i_plus_j() {
        assert_eq!(quat(1, 1, 1, 0).conj(), quat(1, -1, -1, 0));
    }

    #[test]
    fn inverse_is_two_sided() {
        let q = quat(1, 2, -3, 4);
        let inv = q.inv().unwrap();
        assert!(q.mul_ref(&inv).is_one());
        assert!(inv.mul_ref(&q).is_one());
        assert!(matches!(
            RationalQuaternion::zero().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn inner_automorphism_by_i_negates_j() {
        let sigma = SfieldMorphism::inner(RationalQuaternion::i());
        // oracle: i·j·i⁻¹ computed directly
        let direct = RationalQuaternion::i()
            .mul_ref(&RationalQuaternion::j())
            .mul_ref(&RationalQuaternion::i().inv().unwrap());
        assert_eq!(RationalQuaternion::j().apply_morphism(&sigma), direct);
        assert_eq!(direct, -RationalQuaternion::j());
    }
}
