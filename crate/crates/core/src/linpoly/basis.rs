use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, ScalarField};
use crate::linalg::Matrix;

/// An F_q-basis `ω_1, …, ω_n` of F_{q^n}.
///
/// Construction inverts both the Moore matrix `D = (ω_i^{q^j})` over
/// F_{q^n} (used by [`LinearizedPoly::from_matrix`](super::LinearizedPoly::from_matrix))
/// and the F_q coordinate matrix (used to read off coordinates).
#[derive(Clone, Debug)]
pub struct Basis {
    field: Field,
    elements: Vec<FieldElement>,
    coord_inv: Matrix<u32>,
    d_inv: Matrix<Vec<u32>>,
}

impl Basis {
    pub fn new(field: &Field, elements: Vec<FieldElement>) -> Result<Self> {
        let n = field.n() as usize;
        for e in &elements {
            field.check_same(e.field())?;
        }
        if elements.len() != n {
            return Err(Error::NotABasis);
        }
        let ctx = &**field;
        let d = Matrix::from_fn(n, n, |i, j| ctx.raw_frob(elements[i].coeffs(), j as i64));
        let d_inv = d.inverse(ctx).ok_or(Error::NotABasis)?;
        let coords = Matrix::from_fn(n, n, |r, c| elements[c].coeffs()[r]);
        let coord_inv = coords.inverse(field.base()).ok_or(Error::NotABasis)?;
        Ok(Self {
            field: field.clone(),
            elements,
            coord_inv,
            d_inv,
        })
    }

    /// `1, x, …, x^{n-1}`.
    pub fn polynomial(field: &Field) -> Self {
        let n = field.n() as usize;
        let elements = (0..n)
            .map(|j| {
                let mut c = vec![0u32; n];
                c[j] = 1;
                FieldElement::from_raw(field.clone(), c)
            })
            .collect();
        Self::new(field, elements).expect("polynomial basis is a basis")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub(crate) fn d_inverse(&self) -> &Matrix<Vec<u32>> {
        &self.d_inv
    }

    pub(crate) fn coordinates_raw(&self, z: &[u32]) -> Vec<u32> {
        self.coord_inv.mat_vec(self.field.base(), z)
    }

    pub(crate) fn from_coordinates_raw(&self, c: &[u32]) -> Vec<u32> {
        let f = &*self.field;
        let mut acc = ScalarField::zero(f);
        for (ci, w) in c.iter().zip(&self.elements) {
            if *ci != 0 {
                acc = f.add(&acc, &f.raw_scale(*ci, w.coeffs()));
            }
        }
        acc
    }

    /// F_q coordinates (as indices) of `z` in this basis.
    pub fn coordinates(&self, z: &FieldElement) -> Result<Vec<u32>> {
        self.field.check_same(z.field())?;
        Ok(self.coordinates_raw(z.coeffs()))
    }

    pub fn from_coordinates(&self, c: &[u32]) -> Result<FieldElement> {
        if c.len() != self.elements.len() {
            return Err(Error::InvalidFormat("wrong number of coordinates".into()));
        }
        if let Some(&bad) = c.iter().find(|&&x| x as u64 >= self.field.q()) {
            return Err(Error::CoefficientOutOfRange {
                value: bad as u64,
                bound: self.field.q(),
            });
        }
        Ok(FieldElement::from_raw(
            self.field.clone(),
            self.from_coordinates_raw(c),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_elements_rejected() {
        let f = Field::new(2, 1, 3).unwrap();
        let one = f.one();
        let x = f.generator();
        let sum = &one + &x;
        assert_eq!(
            Basis::new(&f, vec![one.clone(), x.clone(), sum]).unwrap_err(),
            Error::NotABasis
        );
        assert_eq!(Basis::new(&f, vec![one, x]).unwrap_err(), Error::NotABasis);
    }

    #[test]
    fn coordinates_round_trip_in_normal_style_basis() {
        let f = Field::new(3, 1, 2).unwrap();
        let b = Basis::new(&f, vec![f.generator(), f.element(4).unwrap()]).unwrap();
        for z in f.elements() {
            let c = b.coordinates(&z).unwrap();
            assert_eq!(b.from_coordinates(&c).unwrap(), z);
        }
    }
}
