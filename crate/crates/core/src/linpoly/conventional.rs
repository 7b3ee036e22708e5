use std::fmt;

use super::LinearizedPoly;
use crate::error::{Error, Result};
use crate::gf::{poly, Field, FieldElement, ScalarField};

/// An ordinary polynomial over F_q, low-degree-first, trimmed.
/// Coefficients are F_q indices; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ConventionalPoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl ConventionalPoly {
    /// Fails unless every coefficient is fixed by the q-Frobenius.
    pub fn new(field: &Field, coeffs: &[FieldElement]) -> Result<Self> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            field.check_same(c.field())?;
            raw.push(c.base_index().ok_or(Error::CoefficientsNotInBaseField)?);
        }
        Self::from_base_indices(field, raw)
    }

    pub fn from_base_indices(field: &Field, mut coeffs: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c as u64 >= field.q()) {
            return Err(Error::CoefficientOutOfRange {
                value: bad as u64,
                bound: field.q(),
            });
        }
        poly::trim(field.base(), &mut coeffs);
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        let p = field.p() as i64;
        let raw = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        Self::from_base_indices(field, raw).expect("prime subfield indices are in range")
    }

    pub fn zero(field: &Field) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self {
            field: field.clone(),
            coeffs: vec![1],
        }
    }

    /// `x^u - 1`.
    pub fn x_pow_minus_one(field: &Field, u: usize) -> Self {
        let b = field.base();
        let mut coeffs = vec![0u32; u + 1];
        coeffs[0] = b.neg(&1);
        coeffs[u] = b.add(&coeffs[u], &1);
        Self::from_base_indices(field, coeffs).expect("in range")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn base_indices(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs
            .iter()
            .map(|&c| self.field.base_element(c as u64).expect("in range"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lift(&self, coeffs: Vec<u32>) -> Self {
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(poly::add(self.field.base(), &self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(poly::sub(self.field.base(), &self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(poly::mul(self.field.base(), &self.coeffs, &rhs.coeffs)))
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let b = self.field.base();
        let mut acc = vec![1u32];
        let mut base = self.coeffs.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = poly::mul(b, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = poly::mul(b, &base, &base);
            }
        }
        self.lift(acc)
    }

    /// Exact division: `None` when `rhs` is zero.
    pub fn divrem(&self, rhs: &Self) -> Result<Option<(Self, Self)>> {
        self.field.check_same(&rhs.field)?;
        Ok(poly::divrem(self.field.base(), &self.coeffs, &rhs.coeffs)
            .map(|(q, r)| (self.lift(q), self.lift(r))))
    }

    pub fn divides(&self, rhs: &Self) -> Result<bool> {
        Ok(match rhs.divrem(self)? {
            Some((_, r)) => r.is_zero(),
            None => false,
        })
    }

    /// Linearized q-associate, reduced mod `x^{q^n} - x`: exponent `i` maps
    /// to `q^{i mod n}` with coefficients added on collision.
    pub fn to_linearized(&self) -> LinearizedPoly {
        let n = self.field.n() as usize;
        let b = self.field.base();
        let mut folded = vec![0u32; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            folded[i % n] = b.add(&folded[i % n], c);
        }
        let raw = folded
            .into_iter()
            .map(|c| {
                let mut v = ScalarField::zero(&*self.field);
                v[0] = c;
                v
            })
            .collect();
        LinearizedPoly::from_raw(&self.field, raw)
    }
}

impl fmt::Debug for ConventionalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConventionalPoly({self})")
    }
}

impl fmt::Display for ConventionalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        super::write_terms(
            f,
            &self.field,
            coeffs.into_iter().enumerate().rev().map(|(i, c)| (i as u64, c)),
        )
    }
}
