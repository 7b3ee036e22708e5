//! Linearized polynomials `Σ a_i x^{q^i}` over F_{q^n}, kept reduced modulo
//! `x^{q^n} - x` (exactly `n` coefficients), their conventional q-associates,
//! and the matrix / subspace views of the induced F_q-linear maps.

mod basis;
mod conventional;
pub mod format;
mod subspace;

use std::fmt;
use std::ops::{Add, Sub};

pub use basis::Basis;
pub use conventional::ConventionalPoly;
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, ScalarField};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: Field,
    /// `coeffs[i]` multiplies `x^{q^i}`; raw F_{q^n} coefficient vectors
    coeffs: Vec<Vec<u32>>,
}

impl LinearizedPoly {
    /// Coefficients beyond `n` are folded back (`x^{q^{i}} ≡ x^{q^{i mod n}}`),
    /// shorter lists are zero-padded.
    pub fn new(field: &Field, coeffs: &[FieldElement]) -> Result<Self> {
        let mut out = Self::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            field.check_same(c.field())?;
            let k = i % out.coeffs.len();
            out.coeffs[k] = field.add(&out.coeffs[k], &c.coeffs().to_vec());
        }
        Ok(out)
    }

    /// Coefficients given by element index, `a_0` first.
    pub fn from_indices(field: &Field, indices: &[u64]) -> Result<Self> {
        let elems = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, &elems)
    }

    pub(crate) fn from_raw(field: &Field, coeffs: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(coeffs.len(), field.n() as usize);
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        let n = field.n() as usize;
        Self::from_raw(field, vec![ScalarField::zero(&**field); n])
    }

    /// The polynomial `x`.
    pub fn identity(field: &Field) -> Self {
        Self::scalar(&field.one())
    }

    /// `c·x`.
    pub fn scalar(c: &FieldElement) -> Self {
        let mut out = Self::zero(c.field());
        out.coeffs[0] = c.coeffs().to_vec();
        out
    }

    /// `c·x^{q^i}`, i taken mod n.
    pub fn monomial(i: usize, c: &FieldElement) -> Self {
        let mut out = Self::zero(c.field());
        let n = out.coeffs.len();
        out.coeffs[i % n] = c.coeffs().to_vec();
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        FieldElement::from_raw(self.field.clone(), self.coeffs[i].clone())
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn coeff_indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.field.raw_index(c)).collect()
    }

    /// True when the induced map is zero (the normal form makes this syntactic).
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field)
    }

    pub(crate) fn eval_raw(&self, z: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        let mut acc = ScalarField::zero(f);
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            let zi = f.raw_frob(z, i as i64);
            let term = if a[0] == 1 && a[1..].iter().all(|&c| c == 0) {
                zi
            } else {
                f.mul(a, &zi)
            };
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// `Σ a_i z^{q^i}`.
    pub fn eval(&self, z: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(z.field())?;
        Ok(FieldElement::from_raw(self.field.clone(), self.eval_raw(z.coeffs())))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        let f = &*self.field;
        Ok(Self::from_raw(
            &self.field,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &*self.field;
        Self::from_raw(&self.field, self.coeffs.iter().map(|a| f.neg(a)).collect())
    }

    /// `c·L(x)`.
    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        self.field.check_same(c.field())?;
        let f = &*self.field;
        let c = c.coeffs().to_vec();
        Ok(Self::from_raw(
            &self.field,
            self.coeffs.iter().map(|a| f.mul(&c, a)).collect(),
        ))
    }

    /// Symbolic product `self ⊗ other = self(other(x))`, reduced:
    /// `c_k = Σ_{i+j ≡ k (mod n)} a_i · b_j^{q^i}`.
    ///
    /// The index fold is only valid because both operands are already
    /// reduced; `b_j^{q^i}` carries the twist that makes ⊗ non-commutative.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let f = &*self.field;
        let n = self.coeffs.len();
        let mut out = vec![ScalarField::zero(f); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let twisted = f.raw_frob(b, i as i64);
                let k = (i + j) % n;
                out[k] = f.add(&out[k], &f.mul(a, &twisted));
            }
        }
        Ok(Self::from_raw(&self.field, out))
    }

    /// `L^{(t)}`, with `L^{(0)} = x`, by square-and-multiply.
    ///
    /// ⊗ is not commutative in general, but every factor here is a power of
    /// the same L, and those commute by associativity.
    pub fn pow(&self, t: u64) -> Self {
        let mut acc = Self::identity(&self.field);
        let mut base = self.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same field");
            }
        }
        acc
    }

    /// `L^{(t)}` by `t - 1` left-to-right products; the reference for [`pow`](Self::pow).
    pub fn pow_iterated(&self, t: u64) -> Self {
        let mut acc = Self::identity(&self.field);
        for _ in 0..t {
            acc = self.compose(&acc).expect("same field");
        }
        acc
    }

    /// All coefficients fixed by the q-Frobenius.
    pub fn has_base_coefficients(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| self.field.raw_frob(c, 1) == *c)
    }

    /// Conventional q-associate `Σ a_i x^i`.
    pub fn to_conventional(&self) -> Result<ConventionalPoly> {
        if !self.has_base_coefficients() {
            return Err(Error::CoefficientsNotInBaseField);
        }
        ConventionalPoly::from_base_indices(&self.field, self.coeffs.iter().map(|c| c[0]).collect())
    }

    /// Matrix of the induced F_q-linear map in basis `b`; column j holds the
    /// coordinates of `L(ω_j)`. Entries are F_q indices.
    pub fn to_matrix(&self, b: &Basis) -> Result<Matrix<u32>> {
        self.field.check_same(b.field())?;
        let n = self.coeffs.len();
        let cols: Vec<Vec<u32>> = b
            .elements()
            .iter()
            .map(|w| b.coordinates_raw(&self.eval_raw(w.coeffs())))
            .collect();
        Ok(Matrix::from_fn(n, n, |r, c| cols[c][r]))
    }

    /// The unique reduced polynomial whose matrix in basis `b` is `m`.
    pub fn from_matrix(m: &Matrix<u32>, b: &Basis) -> Result<Self> {
        let field = b.field();
        let n = field.n() as usize;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                rows: m.rows(),
                cols: m.cols(),
                expected: n,
            });
        }
        if let Some(&bad) = m.data().iter().find(|&&c| c as u64 >= field.q()) {
            return Err(Error::CoefficientOutOfRange {
                value: bad as u64,
                bound: field.q(),
            });
        }
        // b_i = M(ω_i) = Σ_r M[r][i] ω_r, then a = D^{-1} b
        let images: Vec<Vec<u32>> = (0..n)
            .map(|i| b.from_coordinates_raw(&m.column(i)))
            .collect();
        let a = b.d_inverse().mat_vec(&**field, &images);
        Ok(Self::from_raw(field, a))
    }

    /// Kernel `Z_L` and value set `V_L` in canonical form.
    pub fn kernel_image(&self) -> (Subspace, Subspace) {
        let m = self
            .to_matrix(&Basis::polynomial(&self.field))
            .expect("same field");
        let base = self.field.base();
        let kernel = Subspace::from_matrix_rows(&self.field, m.nullspace(base));
        let image = Subspace::from_matrix_rows(&self.field, m.transpose());
        (kernel, image)
    }

    /// Rank of the induced map over F_q.
    pub fn rank(&self) -> usize {
        self.to_matrix(&Basis::polynomial(&self.field))
            .expect("same field")
            .rank(self.field.base())
    }

    /// Bijectivity, decided by full rank over F_q.
    pub fn is_permutation(&self) -> bool {
        self.rank() == self.coeffs.len()
    }
}

impl Add for &LinearizedPoly {
    type Output = LinearizedPoly;

    /// Panics on field mismatch.
    fn add(self, rhs: &LinearizedPoly) -> LinearizedPoly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &LinearizedPoly {
    type Output = LinearizedPoly;

    fn sub(self, rhs: &LinearizedPoly) -> LinearizedPoly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({self})")
    }
}

/// Render `coeff·x^exp` terms, highest exponent first, e.g. `x^9 - x^3 - x`.
pub(crate) fn write_terms(
    out: &mut fmt::Formatter<'_>,
    field: &Field,
    terms: impl Iterator<Item = (u64, FieldElement)>,
) -> fmt::Result {
    let p = field.p() as u64;
    let mut first = true;
    for (exp, c) in terms {
        if c.is_zero() {
            continue;
        }
        let idx = c.index();
        let (negative, shown) = if idx < p {
            if p > 2 && idx > p / 2 {
                (true, Some(p - idx))
            } else {
                (false, Some(idx))
            }
        } else {
            (false, None)
        };
        if first {
            if negative {
                out.write_str("-")?;
            }
        } else {
            out.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let var = match exp {
            0 => String::new(),
            1 => "x".to_string(),
            e => format!("x^{e}"),
        };
        match shown {
            Some(1) if exp != 0 => out.write_str(&var)?,
            Some(v) => write!(out, "{v}{var}")?,
            None => write!(out, "[{idx}]{var}")?,
        }
    }
    if first {
        out.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field.q();
        let n = self.coeffs.len();
        write_terms(
            f,
            &self.field,
            (0..n).rev().map(|i| (q.pow(i as u32), self.coeff(i))),
        )
    }
}
