//! Row reduction over a skew field.
//!
//! Vectors are rows and scalars act on the left, so every row operation is
//! a left multiplication: rows are swapped, scaled on the left by the
//! inverse of their pivot, and reduced by `row_s -= a_s · row_pivot`.
//! Pivot choice: first nonzero column, topmost candidate row.

use crate::starfields::StarField;

pub type Matrix<F> = Vec<Vec<F>>;

/// Result of reducing a list of rows.
#[derive(Clone, Debug)]
pub struct Reduction<F> {
    /// Reduced rows, nonzero rows first. Same length as the input.
    pub rows: Matrix<F>,
    pub pivots: Vec<usize>,
    /// `transform · input = rows`, when requested.
    pub transform: Option<Matrix<F>>,
}

impl<F: StarField> Reduction<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn identity<F: StarField>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

pub fn zeros<F: StarField>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

/// `row ← a · row`.
pub fn scale_row<F: StarField>(a: &F, row: &mut [F]) {
    for x in row.iter_mut() {
        *x = a.mul_ref(x);
    }
}

/// `target ← target − a · source`.
pub fn sub_scaled_row<F: StarField>(target: &mut [F], a: &F, source: &[F]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.sub_ref(&a.mul_ref(s));
        }
    }
}

pub fn row_reduce<F: StarField>(input: &[Vec<F>], ncols: usize, track: bool) -> Reduction<F> {
    let m = input.len();
    let mut rows: Matrix<F> = input.to_vec();
    let mut transform = track.then(|| identity::<F>(m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&p| !rows[p][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = transform.as_mut() {
            t.swap(r, p);
        }
        let inv = rows[r][col]
            .inv()
            .expect("pivot entries are nonzero by construction");
        scale_row(&inv, &mut rows[r]);
        if let Some(t) = transform.as_mut() {
            scale_row(&inv, &mut t[r]);
        }
        let pivot_row = rows[r].clone();
        let pivot_t = transform.as_ref().map(|t| t[r].clone());
        for s in 0..m {
            if s == r || rows[s][col].is_zero() {
                continue;
            }
            let factor = rows[s][col].clone();
            sub_scaled_row(&mut rows[s], &factor, &pivot_row);
            if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_t.as_ref()) {
                sub_scaled_row(&mut t[s], &factor, pt);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Reduction {
        rows,
        pivots,
        transform,
    }
}

/// Reduced echelon basis of the left row space (zero rows dropped).
pub fn rref<F: StarField>(input: &[Vec<F>], ncols: usize) -> (Matrix<F>, Vec<usize>) {
    let red = row_reduce(input, ncols, false);
    let k = red.rank();
    let mut rows = red.rows;
    rows.truncate(k);
    (rows, red.pivots)
}

pub fn rank<F: StarField>(input: &[Vec<F>], ncols: usize) -> usize {
    row_reduce(input, ncols, false).rank()
}

/// Basis of `{ x : Σ xᵢ · input[i] = 0 }`, as coefficient rows of length
/// `input.len()`.
pub fn left_kernel<F: StarField>(input: &[Vec<F>], ncols: usize) -> Matrix<F> {
    let red = row_reduce(input, ncols, true);
    let k = red.rank();
    let mut t = red.transform.expect("tracked");
    t.drain(..k);
    t
}

/// Some `x` with `Σ xᵢ · input[i] = b`, if `b` lies in the row space.
pub fn solve_left<F: StarField>(input: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let ncols = b.len();
    let red = row_reduce(input, ncols, true);
    let t = red.transform.as_ref().expect("tracked");
    let mut rest = b.to_vec();
    let mut x = vec![F::zero(); input.len()];
    for (k, &col) in red.pivots.iter().enumerate() {
        let c = rest[col].clone();
        if c.is_zero() {
            continue;
        }
        sub_scaled_row(&mut rest, &c, &red.rows[k]);
        for (xi, ti) in x.iter_mut().zip(&t[k]) {
            *xi = xi.add_ref(&c.mul_ref(ti));
        }
    }
    rest.iter().all(F::is_zero).then_some(x)
}

/// Two-sided inverse of a square matrix.
pub fn inverse<F: StarField>(m: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = m.len();
    let red = row_reduce(m, n, true);
    (red.rank() == n).then(|| red.transform.expect("tracked"))
}

/// `(AB)ᵢₖ = Σⱼ Aᵢⱼ Bⱼₖ` with the factors kept in that order.
pub fn mat_mul<F: StarField>(a: &[Vec<F>], b: &[Vec<F>], inner: usize, cols: usize) -> Matrix<F> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|k| {
                    (0..inner).fold(F::zero(), |acc, j| {
                        if row[j].is_zero() {
                            acc
                        } else {
                            acc + row[j].mul_ref(&b[j][k])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `Σᵢ coeffs[i] · rows[i]`.
pub fn combine<F: StarField>(coeffs: &[F], rows: &[Vec<F>], ncols: usize) -> Vec<F> {
    let mut out = vec![F::zero(); ncols];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o = o.add_ref(&c.mul_ref(x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starfields::{Rational, RationalQuaternion};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn qrow(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn rref_of_dependent_rows() {
        let rows = vec![qrow(&[1, 2, 3]), qrow(&[2, 4, 6]), qrow(&[0, 1, 1])];
        let (basis, pivots) = rref(&rows, 3);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(basis, vec![qrow(&[1, 0, 1]), qrow(&[0, 1, 1])]);
    }

    #[test]
    fn left_kernel_annihilates() {
        let rows = vec![qrow(&[1, 2]), qrow(&[2, 4]), qrow(&[1, 0])];
        let ker = left_kernel(&rows, 2);
        assert_eq!(ker.len(), 1);
        let combo = combine(&ker[0], &rows, 2);
        assert!(combo.iter().all(Zero::is_zero));
    }

    #[test]
    fn quaternion_inverse_is_two_sided() {
        let (i, j) = (RationalQuaternion::i(), RationalQuaternion::j());
        let one = RationalQuaternion::one();
        let m = vec![vec![one.clone(), i.clone()], vec![j.clone(), one.clone() + one.clone()]];
        let inv = inverse(&m).unwrap();
        let id = identity::<RationalQuaternion>(2);
        assert_eq!(mat_mul(&inv, &m, 2, 2), id);
        assert_eq!(mat_mul(&m, &inv, 2, 2), id);
    }

    #[test]
    fn solve_left_over_quaternions() {
        let (i, j, k) = (
            RationalQuaternion::i(),
            RationalQuaternion::j(),
            RationalQuaternion::k(),
        );
        let z = RationalQuaternion::zero();
        let rows = vec![vec![RationalQuaternion::one(), i.clone()], vec![z.clone(), j.clone()]];
        let b = combine(&[k.clone(), i.clone()], &rows, 2);
        let x = solve_left(&rows, &b).unwrap();
        assert_eq!(x, vec![k, i]);
        let outside = vec![z.clone(), z];
        assert!(solve_left(&rows[..1], &[RationalQuaternion::one(), RationalQuaternion::j()]).is_none());
        assert!(solve_left(&rows, &outside).is_some());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        assert!(inverse(&[qrow(&[1, 2]), qrow(&[2, 4])]).is_none());
        assert!(inverse::<Rational>(&[]).is_some());
    }
}
