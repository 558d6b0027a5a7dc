use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::subspace::Subspace;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::intquat::{self, BigQuat};
use crate::linalg::{self, Matrix};
use crate::starfields::{Rational, SfieldTag, StarField};

#[derive(Debug)]
struct SpaceData<F> {
    gram: Matrix<F>,
    standard: bool,
    // a positive multiple of the gram with integer quaternion entries
    int_gram: Vec<Vec<BigQuat>>,
}

impl<F: StarField> SpaceData<F> {
    fn new(gram: Matrix<F>, standard: bool) -> Self {
        let int_gram = intquat::integerize_rows(&gram);
        SpaceData { gram, standard, int_gram }
    }
}

/// A finite-dimensional left vector space over `F` with a Hermitian form
/// `⟨u,v⟩ = Σ uᵢ Gᵢⱼ vⱼ*` that is certified anisotropic at construction.
///
/// The certificate is positive definiteness: all Cholesky-style pivots
/// (equivalently all leading principal minors) are positive rationals over
/// Q and Qi; over HQ the Gram matrix must be diagonal with positive
/// rational entries. Cloning is cheap.
#[derive(Clone)]
pub struct HermitianSpace<F> {
    inner: Arc<SpaceData<F>>,
}

impl<F: StarField> HermitianSpace<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        certify(&gram)?;
        let standard = gram == linalg::identity::<F>(gram.len());
        Ok(HermitianSpace {
            inner: Arc::new(SpaceData::new(gram, standard)),
        })
    }

    /// `Fⁿ` with the standard form `Σ uᵢ vᵢ*`.
    pub fn standard(n: usize) -> Self {
        HermitianSpace {
            inner: Arc::new(SpaceData::new(linalg::identity(n), true)),
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let n = entries.len();
        let mut gram = linalg::zeros::<F>(n, n);
        for (i, e) in entries.iter().enumerate() {
            gram[i][i] = F::from_rational(e.clone());
        }
        Self::new(gram)
    }

    pub fn dim(&self) -> usize {
        self.inner.gram.len()
    }

    pub fn tag(&self) -> SfieldTag {
        F::TAG
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.inner.gram
    }

    pub fn is_standard(&self) -> bool {
        self.inner.standard
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.gram == other.inner.gram
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        Vector::basis(self.dim(), i)
    }

    pub fn basis(&self) -> Vec<Vector<F>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    pub fn check_vector(&self, u: &Vector<F>) -> Result<()> {
        if u.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "vector of length {} does not belong to a space of dimension {}",
                u.dim(),
                self.dim()
            )))
        }
    }

    /// `⟨u,v⟩`, checking that both vectors belong to this space.
    pub fn herm_form(&self, u: &Vector<F>, v: &Vector<F>) -> Result<F> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        Ok(self.form(u, v))
    }

    /// `⟨u,v⟩` without dimension checks.
    pub fn form(&self, u: &Vector<F>, v: &Vector<F>) -> F {
        let vc: Vec<F> = v.0.iter().map(F::conj).collect();
        self.form_with_conj(u, &vc)
    }

    /// `Σ uᵢ Gᵢⱼ vcⱼ` where `vc` already holds the conjugated coordinates.
    pub(crate) fn form_with_conj(&self, u: &Vector<F>, vc: &[F]) -> F {
        let mut acc = F::zero();
        if self.inner.standard {
            for (a, b) in u.0.iter().zip(vc) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.mul_ref(b);
                }
            }
            return acc;
        }
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row = &self.inner.gram[i];
            let mut inner = F::zero();
            for (g, b) in row.iter().zip(vc) {
                if !g.is_zero() && !b.is_zero() {
                    inner = inner + g.mul_ref(b);
                }
            }
            if !inner.is_zero() {
                acc = acc + ui.mul_ref(&inner);
            }
        }
        acc
    }

    /// `c·u·G` for an integer row `c·u` and some positive rational `c`.
    pub(crate) fn lower_int(&self, u: Vec<BigQuat>) -> Vec<BigQuat> {
        if self.inner.standard {
            return u;
        }
        let g = &self.inner.int_gram;
        intquat::combine(&intquat::IntMorphism::Identity, &u, g, g.len())
    }

    pub fn norm(&self, u: &Vector<F>) -> F {
        self.form(u, u)
    }

    /// Orthogonalizes linearly independent vectors by successively
    /// subtracting `⟨bₖ,eᵢ⟩⟨eᵢ,eᵢ⟩⁻¹eᵢ`. The output spans the same left
    /// subspace and starts with the first input vector.
    pub fn gram_schmidt(&self, input: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        for u in input {
            self.check_vector(u)?;
        }
        let k = input.len();
        let mut out: Vec<Vector<F>> = Vec::with_capacity(k);
        let mut norm_invs: Vec<F> = Vec::with_capacity(k);
        // combos[t] expresses out[t] in terms of the input vectors
        let mut combos: Vec<Vec<F>> = Vec::with_capacity(k);
        for (t, b) in input.iter().enumerate() {
            let mut e = b.clone();
            let mut combo = vec![F::zero(); k];
            combo[t] = F::one();
            for s in 0..out.len() {
                let mu = self.form(b, &out[s]).mul_ref(&norm_invs[s]);
                if mu.is_zero() {
                    continue;
                }
                e = e.sub(&out[s].scale(&mu));
                for (c, cs) in combo.iter_mut().zip(&combos[s]) {
                    *c = c.sub_ref(&mu.mul_ref(cs));
                }
            }
            let n = self.norm(&e);
            if n.is_zero() {
                return Err(Error::Dependent {
                    witness: Value::Array(combo.iter().map(F::to_json).collect()),
                });
            }
            norm_invs.push(n.inv()?);
            out.push(e);
            combos.push(combo);
        }
        Ok(out)
    }

    /// The vector `w` with `⟨u,w⟩ = Σ uᵢ ρᵢ` for every `u`.
    ///
    /// Picks `x ⊥ ker ρ` with `ρ(x) = 1` and returns `⟨x,x⟩⁻¹·x`.
    pub fn dual_representative(&self, rho: &[F]) -> Result<Vector<F>> {
        let n = self.dim();
        if rho.len() != n {
            return Err(Error::input("functional length does not match dimension"));
        }
        if rho.iter().all(F::is_zero) {
            return Ok(Vector::zeros(n));
        }
        let column: Matrix<F> = rho.iter().map(|r| vec![r.clone()]).collect();
        let kernel = linalg::left_kernel(&column, 1);
        let kernel = Subspace::new(self.clone(), kernel.into_iter().map(Vector).collect())?;
        let perp = kernel.orthocomplement();
        let y = perp
            .basis()
            .first()
            .cloned()
            .expect("complement of a hyperplane is a line");
        let rho_y = y
            .0
            .iter()
            .zip(rho)
            .fold(F::zero(), |acc, (a, r)| acc + a.mul_ref(r));
        let x = y.scale(&rho_y.inv()?);
        Ok(x.scale(&self.norm(&x).inv()?))
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({ "sfield": F::TAG.as_str(), "dim": self.dim() });
        if !self.is_standard() {
            obj["gram"] = Value::Array(
                self.gram()
                    .iter()
                    .map(|row| Value::Array(row.iter().map(F::to_json).collect()))
                    .collect(),
            );
        }
        obj
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let tag: SfieldTag = v
            .get("sfield")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse("space needs a string \"sfield\""))?
            .parse()?;
        if tag != F::TAG {
            return Err(Error::TagMismatch { expected: F::TAG });
        }
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("space needs a nonnegative integer \"dim\""))?
            as usize;
        match v.get("gram") {
            None | Some(Value::Null) => Ok(Self::standard(dim)),
            Some(g) => {
                let rows = g
                    .as_array()
                    .ok_or_else(|| Error::parse("gram must be an array of rows"))?;
                let gram: Matrix<F> = rows
                    .iter()
                    .map(|row| Vector::<F>::from_json(row).map(|v| v.0))
                    .collect::<Result<_>>()?;
                if gram.len() != dim || gram.iter().any(|r| r.len() != dim) {
                    return Err(Error::parse(format!("gram must be {dim}×{dim}")));
                }
                Self::new(gram)
            }
        }
    }
}

impl<F: StarField> PartialEq for HermitianSpace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<F: StarField> Eq for HermitianSpace<F> {}

impl<F: StarField> fmt::Debug for HermitianSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianSpace({})", self.to_json())
    }
}

fn certify<F: StarField>(gram: &Matrix<F>) -> Result<()> {
    let n = gram.len();
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::Certificate("gram matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if gram[j][i] != gram[i][j].conj() {
                return Err(Error::Certificate(format!(
                    "gram is not Hermitian at ({i}, {j})"
                )));
            }
        }
    }
    if F::TAG == SfieldTag::HQ {
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if i != j && !g.is_zero() {
                    return Err(Error::Certificate(
                        "quaternionic gram must be diagonal".into(),
                    ));
                }
            }
            match row[i].as_rational() {
                Some(d) if d.is_positive() => {}
                _ => {
                    return Err(Error::Certificate(format!(
                        "diagonal entry {i} is not a positive rational"
                    )))
                }
            }
        }
        return Ok(());
    }
    // Symmetric elimination: pivot k equals the ratio of consecutive leading
    // principal minors, so all minors are positive iff all pivots are.
    let mut a = gram.clone();
    for k in 0..n {
        let d = match a[k][k].as_rational() {
            Some(d) if d.is_positive() => d,
            _ => {
                return Err(Error::Certificate(format!(
                    "leading principal minor {} is not positive",
                    k + 1
                )))
            }
        };
        let d_inv = F::from_rational(Rational::one() / d);
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let l = a[i][k].mul_ref(&d_inv);
            for j in (k + 1)..n {
                let t = l.mul_ref(&a[k][j]);
                a[i][j] = a[i][j].sub_ref(&t);
            }
        }
    }
    Ok(())
}
