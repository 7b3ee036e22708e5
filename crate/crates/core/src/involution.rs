//! Fixed-point-free involutions `L(x) + x + a` over binary fields, where L is
//! a 2-NLP and `a ∈ Z_L \ V_L`.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::linpoly::{LinearizedPoly, Subspace};
use crate::nlp::{nlp_trace, NlpCertificate};
use crate::perm::AffinePerm;

#[derive(Debug, Clone)]
pub struct InvolutionSpec {
    nlp: NlpCertificate,
    shift: FieldElement,
    map: AffinePerm,
}

impl InvolutionSpec {
    pub fn nlp(&self) -> &NlpCertificate {
        &self.nlp
    }

    pub fn field(&self) -> &Field {
        self.nlp.field()
    }

    pub fn shift(&self) -> &FieldElement {
        &self.shift
    }

    /// `f(x) = L(x) + x + a`.
    pub fn map(&self) -> &AffinePerm {
        &self.map
    }

    /// `L(z) = a` has no solution, so `f(z) = z` has none either.
    pub fn certify_fixed_point_free(&self) -> bool {
        let image = self.nlp.poly().kernel_image().1;
        !image.contains(&self.shift).expect("same field")
    }
}

fn check_binary_2nlp(nlp: &NlpCertificate) -> Result<()> {
    if nlp.field().p() != 2 {
        return Err(Error::NotChar2);
    }
    if nlp.index() != 2 {
        return Err(Error::NotA2NLP);
    }
    Ok(())
}

/// The element of `Z_L \ V_L` with the least index, if any.
///
/// Reduce a basis of `Z_L` to echelon form keyed on the highest nonzero
/// coordinate, with pivot coefficient 1. If `b_j` is the basis vector of
/// lowest pivot outside `V_L`, every smaller-pivot vector lies in `V_L`, and
/// adding any of them to `b_j` raises a coordinate where `b_j` is zero, so
/// `b_j` itself is the minimum.
pub fn find_shift(nlp: &NlpCertificate) -> Result<Option<FieldElement>> {
    check_binary_2nlp(nlp)?;
    let field = nlp.field();
    let (kernel, image) = nlp.poly().kernel_image();
    let z = kernel.basis_matrix();
    let n = z.cols();
    let reversed = Matrix::from_fn(z.rows(), n, |r, c| z[(r, n - 1 - c)]).row_basis(field.base());
    // row 0 has the highest pivot, so scan from the bottom
    for r in (0..reversed.rows()).rev() {
        let coeffs: Vec<u32> = (0..n).map(|c| reversed[(r, n - 1 - c)]).collect();
        let candidate = field.from_coeffs(coeffs)?;
        if !image.contains(&candidate)? {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// `f = L + x + a`, rejected unless `L(a) = 0` and `a ∉ V_L`.
pub fn build_involution(nlp: NlpCertificate, a: FieldElement) -> Result<InvolutionSpec> {
    check_binary_2nlp(&nlp)?;
    let (kernel, image): (Subspace, Subspace) = nlp.poly().kernel_image();
    if !kernel.contains(&a)? || image.contains(&a)? {
        return Err(Error::ShiftInKernelImage);
    }
    let linear = nlp.poly() + &LinearizedPoly::identity(nlp.field());
    let map = AffinePerm::new(linear, a.clone())?;
    Ok(InvolutionSpec { nlp, shift: a, map })
}

/// The sparse family over F_{2^{4m}}: `L = Tr_{F_{2^{4m}}/F_{2^m}}` and
/// `a = β^{2^m} + β` with β the coset of x, giving
/// `f(x) = x^{2^{3m}} + x^{2^{2m}} + x^{2^m} + β^{2^m} + β`.
pub fn sparse_involution(m: u32, modulus: Option<Vec<u32>>) -> Result<InvolutionSpec> {
    if m == 0 {
        return Err(Error::InvalidFamily("sparse family needs m >= 1".into()));
    }
    let field = Field::binary(4 * m, modulus)?;
    sparse_involution_in(&field, m)
}

/// [`sparse_involution`] over an existing field, which must be F_2-based of
/// degree `4m`.
pub fn sparse_involution_in(field: &Field, m: u32) -> Result<InvolutionSpec> {
    if field.p() != 2 {
        return Err(Error::NotChar2);
    }
    if field.q() != 2 || m == 0 || field.n() != 4 * m {
        return Err(Error::InvalidFamily(format!(
            "sparse family needs q = 2 and n = 4m, got q = {} n = {} m = {m}",
            field.q(),
            field.n()
        )));
    }
    let beta = field.generator();
    let a = beta.frobenius(m as i64) + &beta;
    // a ∉ F_{2^m} = V_L; a may well lie in F_{2^{2m}}
    if !a.rel_trace(m)?.is_zero() || a.in_subfield(m)? {
        return Err(Error::InternalInconsistency(
            "sparse shift fails its trace or subfield condition".into(),
        ));
    }
    let nlp = nlp_trace(&field.one(), m)?;
    build_involution(nlp, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{poly, PrimeField};

    #[test]
    fn m1_is_fixed_point_free_involution_on_f16() {
        let spec = sparse_involution(1, None).unwrap();
        assert!(spec.map().is_involution());
        assert!(spec.certify_fixed_point_free());
        let table = spec.map().compile().table();
        for (i, &v) in table.iter().enumerate() {
            assert_ne!(v, i as u64);
            assert_eq!(table[v as usize], i as u64);
        }
    }

    #[test]
    fn sparse_shift_can_lie_in_the_middle_subfield() {
        // over F_2[x]/(x^4 + x + 1), β^2 + β satisfies a^4 = a
        let spec = sparse_involution(1, Some(vec![1, 1, 0, 0, 1])).unwrap();
        let a = spec.shift();
        assert!(a.in_subfield(2).unwrap());
        assert!(!a.in_subfield(1).unwrap());
        assert!(spec.certify_fixed_point_free());
    }

    #[test]
    fn sparse_rejects_wrong_fields() {
        let odd = Field::new(3, 1, 4).unwrap();
        assert_eq!(sparse_involution_in(&odd, 1).unwrap_err(), Error::NotChar2);
        let f = Field::new(2, 1, 8).unwrap();
        assert!(matches!(sparse_involution_in(&f, 1), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn zero_shift_rejected() {
        let f = Field::new(2, 1, 4).unwrap();
        let cert = nlp_trace(&f.one(), 1).unwrap();
        assert_eq!(
            build_involution(cert, f.zero()).unwrap_err(),
            Error::ShiftInKernelImage
        );
    }

    #[test]
    fn find_shift_requires_binary_2nlp() {
        let f = Field::new(3, 1, 3).unwrap();
        let cert = nlp_trace(&f.one(), 1).unwrap();
        assert_eq!(find_shift(&cert).unwrap_err(), Error::NotChar2);
    }

    /// In F_2[x]/(x^32 + x^7 + x^3 + x + 1), a product of fields of degrees
    /// 3, 13 and 16, the sparse map does not square to the identity.
    #[test]
    fn sparse_map_fails_in_reducible_quotient() {
        let f2 = PrimeField::new(2);
        let mut modulus = vec![0u32; 33];
        for e in [0, 1, 3, 7, 32] {
            modulus[e] = 1;
        }
        let pow2 = |z: &[u32], k: u32| poly::powmod(&f2, z, 1u64 << k, &modulus);
        let beta = vec![0u32, 1];
        let a = poly::add(&f2, &pow2(&beta, 8), &beta);
        let f = |z: &[u32]| {
            let mut acc = poly::add(&f2, &pow2(z, 24), &pow2(z, 16));
            acc = poly::add(&f2, &acc, &pow2(z, 8));
            poly::add(&f2, &acc, &a)
        };
        let mut back = f(&f(&beta));
        poly::trim(&f2, &mut back);
        assert_ne!(back, beta);
    }
}
