use serde_json::{json, Value};

use super::space::HermitianSpace;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::starfields::StarField;

/// A subspace, stored as the reduced left-row-echelon basis of its span.
/// At finite dimension every subspace is orthoclosed and splitting.
/// Two subspaces are equal iff their echelon bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: StarField> {
    space: HermitianSpace<F>,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: StarField> Subspace<F> {
    /// The span of `vectors` (which may be dependent or contain zeros).
    pub fn new(space: HermitianSpace<F>, vectors: Vec<Vector<F>>) -> Result<Self> {
        for v in &vectors {
            space.check_vector(v)?;
        }
        let rows: Vec<Vec<F>> = vectors.into_iter().map(|v| v.0).collect();
        let (rows, pivots) = linalg::rref(&rows, space.dim());
        Ok(Subspace {
            space,
            basis: rows.into_iter().map(Vector).collect(),
            pivots,
        })
    }

    pub fn zero(space: HermitianSpace<F>) -> Self {
        Subspace {
            space,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(space: HermitianSpace<F>) -> Self {
        let n = space.dim();
        Subspace {
            basis: space.basis(),
            space,
            pivots: (0..n).collect(),
        }
    }

    pub fn space(&self) -> &HermitianSpace<F> {
        &self.space
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership by reducing `u` against the echelon basis.
    pub fn contains(&self, u: &Vector<F>) -> bool {
        if u.dim() != self.space.dim() {
            return false;
        }
        let mut rest = u.0.clone();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            let c = rest[col].clone();
            if !c.is_zero() {
                linalg::sub_scaled_row(&mut rest, &c, &row.0);
            }
        }
        rest.iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coefficients of `u` in the echelon basis, if `u` lies in the subspace.
    pub fn coordinates(&self, u: &Vector<F>) -> Option<Vec<F>> {
        if !self.contains(u) {
            return None;
        }
        // Echelon rows have 1 at their pivot and zeros in other pivot columns.
        Some(self.pivots.iter().map(|&c| u.0[c].clone()).collect())
    }

    /// `S⊥ = { u : ⟨u,v⟩ = 0 for every basis vector v of S }`.
    pub fn orthocomplement(&self) -> Subspace<F> {
        let n = self.space.dim();
        if self.basis.is_empty() {
            return Subspace::full(self.space.clone());
        }
        // ⟨u,v⟩ = Σᵢ uᵢ (G v*)ᵢ, so S⊥ is the left kernel of the n×k matrix
        // whose columns are G·vₜ*.
        let cols: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|v| {
                let vc: Vec<F> = v.0.iter().map(F::conj).collect();
                (0..n)
                    .map(|i| {
                        self.space.gram()[i]
                            .iter()
                            .zip(&vc)
                            .fold(F::zero(), |acc, (g, x)| {
                                if g.is_zero() || x.is_zero() {
                                    acc
                                } else {
                                    acc + g.mul_ref(x)
                                }
                            })
                    })
                    .collect()
            })
            .collect();
        let k = cols.len();
        let m: Vec<Vec<F>> = (0..n)
            .map(|i| (0..k).map(|t| cols[t][i].clone()).collect())
            .collect();
        let kernel = linalg::left_kernel(&m, k);
        Subspace::new(self.space.clone(), kernel.into_iter().map(Vector).collect())
            .expect("kernel vectors have the ambient dimension")
    }

    pub fn projector(&self) -> Projector<F> {
        Projector::new(self)
    }

    /// `u = u_S + u_⊥` with `u_S ∈ S` and `u_⊥ ∈ S⊥`.
    pub fn project(&self, u: &Vector<F>) -> Result<(Vector<F>, Vector<F>)> {
        self.space.check_vector(u)?;
        Ok(self.projector().split(u))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.to_json(),
            "basis": Value::Array(self.basis.iter().map(Vector::to_json).collect()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (space, vectors) = raw_subspace_from_json::<F>(v)?;
        Self::new(space, vectors)
    }
}

/// Space and vectors of a subspace file, in file order and unreduced.
pub fn raw_subspace_from_json<F: StarField>(
    v: &Value,
) -> Result<(HermitianSpace<F>, Vec<Vector<F>>)> {
    let space = HermitianSpace::from_json(
        v.get("space")
            .ok_or_else(|| Error::parse("subspace needs \"space\""))?,
    )?;
    let rows = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("subspace needs an array \"basis\""))?;
    let vectors = rows
        .iter()
        .map(Vector::from_json)
        .collect::<Result<Vec<_>>>()?;
    for u in &vectors {
        space.check_vector(u).map_err(|e| Error::parse(e.to_string()))?;
    }
    Ok((space, vectors))
}

/// Orthogonal basis of a subspace with the inverses of its norms, for
/// repeated projections `u_S = Σ ⟨u,eᵢ⟩⟨eᵢ,eᵢ⟩⁻¹ eᵢ`.
#[derive(Clone, Debug)]
pub struct Projector<F: StarField> {
    space: HermitianSpace<F>,
    ortho: Vec<Vector<F>>,
    norm_invs: Vec<F>,
}

impl<F: StarField> Projector<F> {
    pub fn new(s: &Subspace<F>) -> Self {
        let ortho = s
            .space
            .gram_schmidt(&s.basis)
            .expect("echelon basis is independent");
        let norm_invs = ortho
            .iter()
            .map(|e| s.space.norm(e).inv().expect("anisotropic"))
            .collect();
        Projector {
            space: s.space.clone(),
            ortho,
            norm_invs,
        }
    }

    pub fn orthogonal_basis(&self) -> &[Vector<F>] {
        &self.ortho
    }

    /// Coefficients `⟨u,eᵢ⟩⟨eᵢ,eᵢ⟩⁻¹` of the projection in the orthogonal basis.
    pub fn coefficients(&self, u: &Vector<F>) -> Vec<F> {
        self.ortho
            .iter()
            .zip(&self.norm_invs)
            .map(|(e, ni)| self.space.form(u, e).mul_ref(ni))
            .collect()
    }

    pub fn project(&self, u: &Vector<F>) -> Vector<F> {
        let coeffs = self.coefficients(u);
        let rows: Vec<Vec<F>> = self.ortho.iter().map(|e| e.0.clone()).collect();
        Vector(linalg::combine(&coeffs, &rows, self.space.dim()))
    }

    pub fn split(&self, u: &Vector<F>) -> (Vector<F>, Vector<F>) {
        let us = self.project(u);
        let perp = u.sub(&us);
        (us, perp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starfields::Rational;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qv(v: &[i64]) -> Vector<Rational> {
        Vector(v.iter().map(|&x| r(x, 1)).collect())
    }

    fn span(h: &HermitianSpace<Rational>, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::new(h.clone(), vs.iter().map(|v| qv(v)).collect()).unwrap()
    }

    #[test]
    fn orthocomplement_examples() {
        let h3 = HermitianSpace::standard(3);
        assert_eq!(
            span(&h3, &[&[1, 0, 0]]).orthocomplement(),
            span(&h3, &[&[0, 1, 0], &[0, 0, 1]])
        );
        assert!(Subspace::full(h3.clone()).orthocomplement().is_zero());
        let h2 = HermitianSpace::standard(2);
        assert_eq!(span(&h2, &[&[1, 1]]).orthocomplement(), span(&h2, &[&[1, -1]]));
    }

    #[test]
    fn double_complement_is_identity() {
        let h = HermitianSpace::<Rational>::diagonal(&[r(1, 1), r(3, 1), r(1, 2)]).unwrap();
        let s = span(&h, &[&[1, 2, 3]]);
        let perp = s.orthocomplement();
        assert_eq!(perp.dim(), 2);
        assert_eq!(perp.orthocomplement(), s);
    }

    #[test]
    fn projection_examples() {
        let h3 = HermitianSpace::standard(3);
        let s = span(&h3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            s.project(&qv(&[2, 3, 5])).unwrap(),
            (qv(&[2, 3, 0]), qv(&[0, 0, 5]))
        );
        assert_eq!(
            s.project(&qv(&[2, 3, 0])).unwrap(),
            (qv(&[2, 3, 0]), qv(&[0, 0, 0]))
        );
        let h2 = HermitianSpace::standard(2);
        let line = span(&h2, &[&[1, 1]]);
        let (us, up) = line.project(&qv(&[1, 0])).unwrap();
        assert_eq!(us, Vector(vec![r(1, 2), r(1, 2)]));
        assert_eq!(up, Vector(vec![r(1, 2), r(-1, 2)]));
    }

    #[test]
    fn membership_and_coordinates() {
        let h3 = HermitianSpace::standard(3);
        let s = span(&h3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(s.contains(&qv(&[1, 2, 1])));
        assert!(!s.contains(&qv(&[0, 0, 1])));
        let c = s.coordinates(&qv(&[1, 2, 1])).unwrap();
        let back = linalg::combine(
            &c,
            &s.basis().iter().map(|b| b.0.clone()).collect::<Vec<_>>(),
            3,
        );
        assert_eq!(Vector(back), qv(&[1, 2, 1]));
    }
}
