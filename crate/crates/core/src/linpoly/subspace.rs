use crate::error::Result;
use crate::gf::{Field, FieldElement, ScalarField};
use crate::linalg::Matrix;

/// An F_q-subspace of F_{q^n}, stored as the RREF of its basis in
/// polynomial-basis coordinates. Two subspaces are equal iff their RREF
/// matrices are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    basis: Matrix<u32>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `rows` (coordinates over F_q).
    pub fn from_matrix_rows(field: &Field, rows: Matrix<u32>) -> Self {
        let basis = rows.row_basis(field.base());
        let pivots = (0..basis.rows())
            .map(|r| basis.row(r).iter().position(|&c| c != 0).expect("nonzero row"))
            .collect();
        Self {
            field: field.clone(),
            basis,
            pivots,
        }
    }

    pub fn span(field: &Field, elements: &[FieldElement]) -> Result<Self> {
        for e in elements {
            field.check_same(e.field())?;
        }
        let n = field.n() as usize;
        let rows = elements.iter().map(|e| e.coeffs().to_vec()).collect();
        Ok(Self::from_matrix_rows(field, Matrix::from_rows(n, rows)))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_matrix_rows(field, Matrix::from_rows(field.n() as usize, Vec::new()))
    }

    pub fn full(field: &Field) -> Self {
        Self::from_matrix_rows(field, Matrix::identity(field.base(), field.n() as usize))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Number of elements, q^dim.
    pub fn size(&self) -> u64 {
        self.field.q().pow(self.dim() as u32)
    }

    /// Canonical RREF basis matrix.
    pub fn basis_matrix(&self) -> &Matrix<u32> {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<FieldElement> {
        (0..self.dim())
            .map(|r| FieldElement::from_raw(self.field.clone(), self.basis.row(r).to_vec()))
            .collect()
    }

    pub(crate) fn contains_raw(&self, z: &[u32]) -> bool {
        let b = self.field.base();
        let mut v = z.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let coef = v[c];
            if coef == 0 {
                continue;
            }
            for (vi, rc) in v.iter_mut().zip(self.basis.row(r)) {
                *vi = b.sub(vi, &b.mul(&coef, rc));
            }
        }
        v.iter().all(|&c| c == 0)
    }

    pub fn contains(&self, z: &FieldElement) -> Result<bool> {
        self.field.check_same(z.field())?;
        Ok(self.contains_raw(z.coeffs()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.field.check_same(&other.field)?;
        Ok((0..self.dim()).all(|r| other.contains_raw(self.basis.row(r))))
    }

    /// Every element, as F_q-combinations of the basis (q^dim of them).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.field.q();
        let k = self.dim();
        let f = &*self.field;
        (0..self.size()).map(move |mut combo| {
            let mut acc = ScalarField::zero(f);
            for r in 0..k {
                let c = (combo % q) as u32;
                combo /= q;
                if c != 0 {
                    acc = f.add(&acc, &f.raw_scale(c, self.basis.row(r)));
                }
            }
            FieldElement::from_raw(self.field.clone(), acc)
        })
    }
}
