//! Orthogonality tests between many rays. Every supported scalar embeds in
//! the rational quaternions; clearing denominators of a whole row by their
//! lcm is a positive central rescaling, so `⟨u,v⟩` can be computed on
//! integer quaternions up to a positive factor. Rows that fit in `i64` are
//! paired in `i128` when the bit lengths allow it, everything else in `BigInt`.

use num_traits::{ToPrimitive, Zero};

use super::ray::Ray;
use crate::hermspace::HermitianSpace;
use crate::intquat::{conj, mul as qmul_big, BigQuat};
use crate::par::{self, Execution};
use crate::starfields::{SfieldTag, StarField};

type IntQuat = [i64; 4];

/// One side of the pairing: `s·u·G` (left) or `t·v*` (right) for the ray's
/// integer row and positive rationals `s`, `t`. `None` for the zero ray.
#[derive(Clone, Debug)]
pub(crate) struct Side {
    big: Option<Vec<BigQuat>>,
    small: Option<Vec<IntQuat>>,
    // bit length of the largest small entry
    bits: u32,
    // leading quaternion parts that can be nonzero: 1 over Q, 2 over Qi
    width: u8,
}

impl Side {
    pub fn left<F: StarField>(space: &HermitianSpace<F>, x: &Ray<F>) -> Self {
        Self::build::<F>(x.int_row().map(|u| space.lower_int(u.to_vec())))
    }

    pub fn right<F: StarField>(x: &Ray<F>) -> Self {
        Self::build::<F>(x.int_row().map(|v| v.iter().map(conj).collect()))
    }

    fn build<F: StarField>(big: Option<Vec<BigQuat>>) -> Self {
        let small: Option<Vec<IntQuat>> = big.as_ref().and_then(|b| {
            b.iter()
                .map(|q| {
                    let mut out = [0i64; 4];
                    for (o, c) in out.iter_mut().zip(q) {
                        *o = c.to_i64()?;
                    }
                    Some(out)
                })
                .collect()
        });
        let bits = small
            .iter()
            .flatten()
            .flatten()
            .map(|x| 64 - x.unsigned_abs().leading_zeros())
            .max()
            .unwrap_or(0);
        let width = match F::TAG {
            SfieldTag::Q => 1,
            SfieldTag::Qi => 2,
            SfieldTag::HQ => 4,
        };
        Side { big, small, bits, width }
    }
}

macro_rules! pair_in {
    ($t:ty, $ls:expr, $rs:expr, $width:expr) => {{
        let mut acc = [0 as $t; 4];
        for (a, b) in $ls.iter().zip($rs) {
            let w = |x: i64| x as $t;
            match $width {
                1 => acc[0] += w(a[0]) * w(b[0]),
                2 => {
                    acc[0] += w(a[0]) * w(b[0]) - w(a[1]) * w(b[1]);
                    acc[1] += w(a[0]) * w(b[1]) + w(a[1]) * w(b[0]);
                }
                _ => {
                    let (a0, a1, a2, a3) = (w(a[0]), w(a[1]), w(a[2]), w(a[3]));
                    let (b0, b1, b2, b3) = (w(b[0]), w(b[1]), w(b[2]), w(b[3]));
                    acc[0] += a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3;
                    acc[1] += a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2;
                    acc[2] += a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1;
                    acc[3] += a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0;
                }
            }
        }
        acc
    }};
}

/// Exact `Σ aᵢbᵢ` in machine integers when the operands leave room for it:
/// each component sums `4n` products of at most `l.bits + r.bits` bits.
fn pair_small(l: &Side, r: &Side) -> Option<[i128; 4]> {
    let (ls, rs) = (l.small.as_ref()?, r.small.as_ref()?);
    let terms = 4 * ls.len() as u32;
    let need = l.bits + r.bits + (32 - terms.leading_zeros());
    let width = l.width.max(r.width);
    if need <= 62 {
        Some(pair_in!(i64, ls, rs, width).map(i128::from))
    } else if need <= 126 {
        Some(pair_in!(i128, ls, rs, width))
    } else {
        None
    }
}

fn pair_big(l: &[BigQuat], r: &[BigQuat]) -> BigQuat {
    let mut acc: BigQuat = Default::default();
    for (a, b) in l.iter().zip(r) {
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            continue;
        }
        for (s, t) in acc.iter_mut().zip(qmul_big(a, b)) {
            *s += t;
        }
    }
    acc
}

/// `s·t·⟨u,v⟩` for the integer rows `u`, `v` of the two rays, `None` if
/// either ray is zero. Other representatives change it by `α(·)β*`.
pub(crate) fn value(l: &Side, r: &Side) -> Option<BigQuat> {
    let (lb, rb) = (l.big.as_ref()?, r.big.as_ref()?);
    if let Some(p) = pair_small(l, r) {
        return Some(p.map(num_bigint::BigInt::from));
    }
    Some(pair_big(lb, rb))
}

/// Whether the rays behind `l` and `r` are orthogonal.
pub(crate) fn perp(l: &Side, r: &Side) -> bool {
    let (Some(lb), Some(rb)) = (&l.big, &r.big) else {
        return true;
    };
    if let Some(p) = pair_small(l, r) {
        return p == [0; 4];
    }
    pair_big(lb, rb).iter().all(Zero::is_zero)
}

/// Both sides for every ray of a list.
pub(crate) struct PerpTable {
    pub left: Vec<Side>,
    pub right: Vec<Side>,
}

impl PerpTable {
    pub fn new<F: StarField>(space: &HermitianSpace<F>, rays: &[Ray<F>], exec: Execution) -> Self {
        let left = par::map(exec, rays, |x| Side::left(space, x));
        let right = par::map(exec, rays, Side::right);
        PerpTable { left, right }
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        perp(&self.left[i], &self.right[j])
    }

    pub fn value(&self, i: usize, j: usize) -> Option<BigQuat> {
        value(&self.left[i], &self.right[j])
    }
}
