//! Nilpotent linearized polynomials: index computation and the constructive
//! families.
//!
//! A t-NLP is a linearized polynomial `L ≢ 0` with `L^{(t)} ≡ 0` on F_{q^n}.
//! The induced map is a nilpotent operator on an n-dimensional F_q-space, so
//! its index never exceeds n; every search here stops at n.

use std::fmt;

use crate::error::{AlphaBetaCondition, Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::linpoly::{Basis, ConventionalPoly, LinearizedPoly, Subspace};

/// Largest field scanned by [`alpha_beta_family`].
pub const ALPHA_BETA_SCAN_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NlpFamily {
    ValueSet,
    Trace,
    AlphaBeta,
    BaseField,
    Custom,
}

impl NlpFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            NlpFamily::ValueSet => "valueset",
            NlpFamily::Trace => "trace",
            NlpFamily::AlphaBeta => "alphabeta",
            NlpFamily::BaseField => "basefield",
            NlpFamily::Custom => "custom",
        }
    }
}

impl fmt::Display for NlpFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A polynomial together with its exact nilpotency index and an element it
/// does not annihilate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NlpCertificate {
    poly: LinearizedPoly,
    index: usize,
    witness: FieldElement,
    family: NlpFamily,
}

impl NlpCertificate {
    /// Computes the index; fails for the zero map and for non-nilpotent maps.
    pub fn new(poly: LinearizedPoly, family: NlpFamily) -> Result<Self> {
        let index = match nilpotency_index(&poly) {
            None => return Err(Error::NotNilpotent),
            Some(1) => return Err(Error::ZeroPolynomial),
            Some(t) => t,
        };
        let witness = nonzero_witness(&poly).expect("nonzero map");
        Ok(Self {
            poly,
            index,
            witness,
            family,
        })
    }

    pub fn poly(&self) -> &LinearizedPoly {
        &self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    /// The exact index: `L^{(t)} = 0` and `L^{(t-1)} ≠ 0`.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn witness(&self) -> &FieldElement {
        &self.witness
    }

    pub fn family(&self) -> NlpFamily {
        self.family
    }

    /// Re-checks every claim of the certificate from scratch.
    pub fn verify(&self) -> bool {
        self.poly.pow(self.index as u64).is_zero()
            && !self.poly.pow(self.index as u64 - 1).is_zero()
            && !self.poly.eval(&self.witness).is_ok_and(|v| v.is_zero())
    }
}

/// First F_p basis vector (element index `p^k`) not in the kernel.
fn nonzero_witness(poly: &LinearizedPoly) -> Option<FieldElement> {
    let field = poly.field();
    let p = field.p() as u64;
    let digits = field.m() * field.n();
    (0..digits).find_map(|k| {
        let e = field.element(p.pow(k)).expect("in range");
        (!poly.eval(&e).expect("same field").is_zero()).then_some(e)
    })
}

/// Smallest `t ≥ 1` with `L^{(t)} ≡ 0`, by iterated symbolic products.
/// The zero polynomial has index 1; `None` means not nilpotent.
pub fn nilpotency_index(poly: &LinearizedPoly) -> Option<usize> {
    let n = poly.field().n() as usize;
    let mut power = poly.clone();
    for t in 1..=n {
        if power.is_zero() {
            return Some(t);
        }
        power = poly.compose(&power).expect("same field");
    }
    None
}

/// The same index computed from powers of the F_q matrix.
pub fn nilpotency_index_by_matrix(poly: &LinearizedPoly) -> Option<usize> {
    let field = poly.field();
    let base = field.base();
    let m = poly
        .to_matrix(&Basis::polynomial(field))
        .expect("same field");
    let mut power = m.clone();
    for t in 1..=field.n() as usize {
        if power.is_zero(base) {
            return Some(t);
        }
        power = m.mul(base, &power);
    }
    None
}

/// An NLP with prescribed value set, following the shift-operator
/// construction: extend a basis `ω_1..ω_k` of V by polynomial-basis vectors,
/// then send `ω_n -> ω_1`, `ω_i -> ω_{i+1}` for `i < k`, and the rest to 0.
/// The result has value set exactly V and index `k + 1`.
pub fn nlp_from_valueset(v: &Subspace) -> Result<NlpCertificate> {
    let field = v.field();
    let n = field.n() as usize;
    let k = v.dim();
    if k == 0 || k == n {
        return Err(Error::TrivialValueSet);
    }
    let mut omegas = v.basis_elements();
    let mut span = v.clone();
    for j in 0..n {
        if omegas.len() == n {
            break;
        }
        let e = field.element(field.q().pow(j as u32)).expect("in range");
        if !span.contains(&e)? {
            omegas.push(e);
            span = Subspace::span(field, &omegas)?;
        }
    }
    let basis = Basis::new(field, omegas)?;
    let base = field.base();
    let mut m = Matrix::zeros(base, n, n);
    for j in 0..k - 1 {
        m.set(j + 1, j, 1);
    }
    m.set(0, n - 1, 1);
    let poly = LinearizedPoly::from_matrix(&m, &basis)?;
    NlpCertificate::new(poly, NlpFamily::ValueSet)
}

/// `Tr_{F_{q^n}/F_{q^d}}(x) = Σ_{i<n/d} x^{q^{d i}}`.
pub fn relative_trace_poly(field: &Field, d: u32) -> Result<LinearizedPoly> {
    let n = field.n();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { divisor: d, n });
    }
    let mut out = LinearizedPoly::zero(field);
    for i in 0..n / d {
        out = &out + &LinearizedPoly::monomial((i * d) as usize, &field.one());
    }
    Ok(out)
}

/// `θ·Tr_{F_{q^n}/F_{q^d}}(x)` for `θ ≠ 0` of trace zero; a 2-NLP with value
/// set `θ·F_{q^d}`.
pub fn nlp_trace(theta: &FieldElement, d: u32) -> Result<NlpCertificate> {
    let field = theta.field();
    let tr = relative_trace_poly(field, d)?;
    if theta.is_zero() {
        return Err(Error::ZeroTheta);
    }
    if !theta.rel_trace(d)?.is_zero() {
        return Err(Error::TraceNotZero);
    }
    NlpCertificate::new(tr.scale(theta)?, NlpFamily::Trace)
}

/// `αβ x^{q^m} + αx` over F_{q^{2m}}, where `α^{q^m} = -α` and `β^{q^m+1} = 1`.
pub fn nlp_alpha_beta(alpha: &FieldElement, beta: &FieldElement) -> Result<NlpCertificate> {
    let field = alpha.field();
    field.check_same(beta.field())?;
    let n = field.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddExtension);
    }
    let half = (n / 2) as i64;
    if !alpha_condition(alpha, half) {
        return Err(Error::ConditionViolated(AlphaBetaCondition::Alpha));
    }
    if !beta_condition(beta, half) {
        return Err(Error::ConditionViolated(AlphaBetaCondition::Beta));
    }
    let poly = &LinearizedPoly::monomial(half as usize, &(alpha * beta))
        + &LinearizedPoly::scalar(alpha);
    NlpCertificate::new(poly, NlpFamily::AlphaBeta)
}

fn alpha_condition(alpha: &FieldElement, half: i64) -> bool {
    !alpha.is_zero() && (alpha.frobenius(half) + alpha).is_zero()
}

fn beta_condition(beta: &FieldElement, half: i64) -> bool {
    !beta.is_zero() && (beta.frobenius(half) * beta).is_one()
}

/// Every member of the α/β family, by scanning the field for both
/// conditions. Fields above [`ALPHA_BETA_SCAN_LIMIT`] are refused.
pub fn alpha_beta_family(field: &Field) -> Result<Vec<NlpCertificate>> {
    if !field.n().is_multiple_of(2) {
        return Err(Error::OddExtension);
    }
    if field.order() > ALPHA_BETA_SCAN_LIMIT {
        return Err(Error::FieldTooLarge {
            order: field.order(),
            budget: ALPHA_BETA_SCAN_LIMIT,
        });
    }
    let half = (field.n() / 2) as i64;
    let alphas: Vec<_> = field.elements().filter(|a| alpha_condition(a, half)).collect();
    let betas: Vec<_> = field.elements().filter(|b| beta_condition(b, half)).collect();
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for a in &alphas {
        for b in &betas {
            out.push(nlp_alpha_beta(a, b)?);
        }
    }
    Ok(out)
}

/// `n = p^s·u` with `gcd(u, p) = 1`.
fn split_degree(n: u32, p: u32) -> (u32, u32) {
    let (mut s, mut u) = (0, n);
    while u % p == 0 {
        u /= p;
        s += 1;
    }
    (s, u)
}

/// `(x^u - 1)^d` with `d = ⌈p^s/t⌉`, together with the degree bound
/// `n - 1 - u·d` for the multiplier r.
fn base_field_factor(field: &Field, t: usize) -> Result<(ConventionalPoly, i64)> {
    if t < 2 {
        return Err(Error::InvalidNilpotencyTarget(t));
    }
    let n = field.n();
    let (s, u) = split_degree(n, field.p());
    if s == 0 {
        return Err(Error::PNotDividingN);
    }
    let ps = (field.p() as usize).pow(s);
    let d = ps.div_ceil(t);
    let bound = n as i64 - 1 - (u as usize * d) as i64;
    let factor = ConventionalPoly::x_pow_minus_one(field, u as usize).pow(d);
    Ok((factor, bound))
}

/// Linearized q-associate of `r(x)(x^u - 1)^{⌈p^s/t⌉}`, a t-NLP with
/// coefficients in F_q whenever `deg r ≤ n - 1 - u·⌈p^s/t⌉`.
pub fn nlp_base_field(r: &ConventionalPoly, t: usize) -> Result<NlpCertificate> {
    let field = r.field();
    let (factor, bound) = base_field_factor(field, t)?;
    let degree = r.degree().ok_or(Error::ZeroR)?;
    if degree as i64 > bound {
        return Err(Error::DegreeTooLarge { degree, bound });
    }
    let l = r.checked_mul(&factor)?;
    let cert = NlpCertificate::new(l.to_linearized(), NlpFamily::BaseField)?;
    if cert.index() > t {
        return Err(Error::InternalInconsistency(format!(
            "base-field construction produced index {} > {t}",
            cert.index()
        )));
    }
    Ok(cert)
}

/// For L with F_q coefficients: whether `x^n - 1` divides `l(x)^t`, which
/// holds exactly when `L^{(t)} ≡ 0`.
pub fn base_field_criterion(poly: &LinearizedPoly, t: usize) -> Result<bool> {
    if t < 2 {
        return Err(Error::InvalidNilpotencyTarget(t));
    }
    let l = poly.to_conventional()?;
    if l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let modulus = ConventionalPoly::x_pow_minus_one(poly.field(), poly.field().n() as usize);
    modulus.divides(&l.pow(t))
}
