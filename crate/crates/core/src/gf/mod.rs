//! Exact arithmetic in the tower F_p → F_q = F_p[y]/(g) → F_{q^n} = F_q[x]/(f).
//!
//! An element of F_{q^n} is stored as its `n` coefficients in the polynomial
//! basis `1, x, …, x^{n-1}`, each coefficient an F_q element packed as its
//! index. The index of the whole element is `Σ_j idx(c_j) q^j`, which equals
//! `Σ_k d_k p^k` over the flat F_p digit vector (digit `k = j·m + a` is the
//! coefficient of `y^a x^j`). Index 0 is zero, index 1 is one.

mod base;
pub mod poly;
mod scalar;
mod spec;

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub use base::BaseField;
pub use scalar::{PrimeField, ScalarField};
pub use spec::{preset_modulus, PRESETS};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Immutable description of F_{q^n}, q = p^m.
pub struct FieldCtx {
    p: u32,
    m: u32,
    n: u32,
    q: u64,
    order: u64,
    base: BaseField,
    /// monic, degree n, F_q indices low-degree-first
    f: Vec<u32>,
    /// `frob[i]` is the n×n row-major F_q matrix of z ↦ z^{q^i}
    frob: Vec<Vec<u32>>,
    /// p = 2 only: `frob_bits[i][k]` is the index of `e_k^{q^i}` where `e_k`
    /// has index `2^k`; the map is F_2-linear on index bits.
    frob_bits: Option<Vec<Vec<u64>>>,
}

impl FieldCtx {
    fn build(p: u32, m: u32, n: u32, g: Option<Vec<u32>>, f: Option<Vec<u32>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::NTooSmall(n));
        }
        if m == 0 {
            return Err(Error::InvalidFieldSpec("m must be at least 1".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::FieldOrderOverflow)?;
        let order = q.checked_pow(n).ok_or(Error::FieldOrderOverflow)?;

        let prime = PrimeField::new(p);
        let g = match g {
            Some(g) => validate_modulus(&prime, g, m as usize, p as u64, "g")?,
            None => smallest_irreducible(&prime, m as usize, p as u64),
        };
        let base = BaseField::new(p, m, g);
        let f = match f {
            Some(f) => validate_modulus(&base, f, n as usize, q, "f")?,
            None => smallest_irreducible(&base, n as usize, q),
        };

        let mut ctx = Self {
            p,
            m,
            n,
            q,
            order,
            base,
            f,
            frob: Vec::new(),
            frob_bits: None,
        };
        ctx.frob = ctx.frobenius_matrices();
        if p == 2 {
            ctx.frob_bits = Some(ctx.frobenius_bit_images());
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Size of the base field.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements, q^n.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    /// Modulus of F_q over F_p, monic, low-degree-first.
    pub fn g(&self) -> &[u32] {
        self.base.modulus()
    }

    /// Modulus of F_{q^n} over F_q, monic, F_q indices low-degree-first.
    pub fn f(&self) -> &[u32] {
        &self.f
    }

    fn nu(&self) -> usize {
        self.n as usize
    }

    fn frobenius_matrices(&self) -> Vec<Vec<u32>> {
        let n = self.nu();
        let b = &self.base;
        let xq = poly::powmod(b, &[0, 1], self.q, &self.f);
        // columns of the q-power map: x^{qj} mod f
        let mut first = vec![0u32; n * n];
        let mut col = vec![1u32];
        for j in 0..n {
            for (r, &c) in col.iter().enumerate() {
                first[r * n + j] = c;
            }
            col = poly::mulmod(b, &col, &xq, &self.f);
        }
        let mut identity = vec![0u32; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut mats = vec![identity];
        for i in 1..n {
            let prev = &mats[i - 1];
            let mut next = vec![0u32; n * n];
            for r in 0..n {
                for k in 0..n {
                    let a = first[r * n + k];
                    if a == 0 {
                        continue;
                    }
                    for c in 0..n {
                        let t = b.mul(&a, &prev[k * n + c]);
                        next[r * n + c] = b.add(&next[r * n + c], &t);
                    }
                }
            }
            mats.push(next);
        }
        mats
    }

    fn frobenius_bit_images(&self) -> Vec<Vec<u64>> {
        let digits = (self.m * self.n) as usize;
        (0..self.nu())
            .map(|i| {
                (0..digits)
                    .map(|k| {
                        let e = self.raw_from_index(1u64 << k);
                        self.raw_index(&self.frob_matvec(&e, i))
                    })
                    .collect()
            })
            .collect()
    }

    fn frob_matvec(&self, z: &[u32], i: usize) -> Vec<u32> {
        let n = self.nu();
        let mat = &self.frob[i];
        let b = &self.base;
        let mut out = vec![0u32; n];
        for (c, zc) in z.iter().enumerate() {
            if *zc == 0 {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = mat[r * n + c];
                if a != 0 {
                    *o = b.add(o, &b.mul(&a, zc));
                }
            }
        }
        out
    }

    pub(crate) fn raw_index(&self, z: &[u32]) -> u64 {
        z.iter().rev().fold(0u64, |acc, &c| acc * self.q + c as u64)
    }

    pub(crate) fn raw_from_index(&self, mut idx: u64) -> Vec<u32> {
        (0..self.nu())
            .map(|_| {
                let c = (idx % self.q) as u32;
                idx /= self.q;
                c
            })
            .collect()
    }

    pub(crate) fn raw_frob(&self, z: &[u32], i: i64) -> Vec<u32> {
        let i = i.rem_euclid(self.n as i64) as usize;
        if i == 0 {
            return z.to_vec();
        }
        match &self.frob_bits {
            Some(bits) => {
                let mut idx = self.raw_index(z);
                let mut acc = 0u64;
                let mut k = 0;
                while idx != 0 {
                    if idx & 1 == 1 {
                        acc ^= bits[i][k];
                    }
                    idx >>= 1;
                    k += 1;
                }
                self.raw_from_index(acc)
            }
            None => self.frob_matvec(z, i),
        }
    }

    pub(crate) fn raw_pow(&self, z: &[u32], mut e: u128) -> Vec<u32> {
        let mut acc = self.one();
        let mut base = z.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scalar multiple `c·z` with `c` in F_q.
    pub(crate) fn raw_scale(&self, c: u32, z: &[u32]) -> Vec<u32> {
        z.iter().map(|zi| self.base.mul(&c, zi)).collect()
    }
}

impl ScalarField for FieldCtx {
    type Elem = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![0; self.nu()]
    }

    fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.nu()];
        v[0] = 1;
        v
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let n = self.nu();
        let bf = &self.base;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    prod[i + j] = bf.add(&prod[i + j], &bf.mul(ai, bj));
                }
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            let nc = bf.neg(&c);
            for (i, fi) in self.f[..n].iter().enumerate() {
                if *fi != 0 {
                    prod[d - n + i] = bf.add(&prod[d - n + i], &bf.mul(&nc, fi));
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn inv(&self, a: &Vec<u32>) -> Option<Vec<u32>> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.raw_pow(a, self.order as u128 - 2))
        }
    }

    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

fn validate_modulus<F: ScalarField<Elem = u32>>(
    field: &F,
    mut poly: Vec<u32>,
    degree: usize,
    bound: u64,
    name: &'static str,
) -> Result<Vec<u32>> {
    if let Some(&bad) = poly.iter().find(|&&c| c as u64 >= bound) {
        return Err(Error::CoefficientOutOfRange {
            value: bad as u64,
            bound,
        });
    }
    poly::trim(field, &mut poly);
    let found = poly.len().saturating_sub(1);
    if poly.is_empty() || found != degree {
        return Err(Error::DegreeMismatch {
            name,
            expected: degree,
            found,
        });
    }
    poly::make_monic(field, &mut poly);
    if !poly::is_irreducible(field, &poly, bound) {
        return Err(Error::NotIrreducible(name));
    }
    Ok(poly)
}

/// Lexicographically smallest monic irreducible of the given degree, lower
/// coefficients read as a base-`order` integer with the constant term least
/// significant.
fn smallest_irreducible<F: ScalarField<Elem = u32>>(field: &F, degree: usize, order: u64) -> Vec<u32> {
    let mut low = 0u64;
    loop {
        let mut poly = Vec::with_capacity(degree + 1);
        let mut rest = low;
        for _ in 0..degree {
            poly.push((rest % order) as u32);
            rest /= order;
        }
        poly.push(1);
        // a zero constant term means x divides it
        if (degree == 1 || poly[0] != 0) && poly::is_irreducible(field, &poly, order) {
            return poly;
        }
        low += 1;
    }
}

/// Shared handle to a [`FieldCtx`].
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;

    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p
                && self.m == other.m
                && self.n == other.n
                && self.g() == other.g()
                && self.f == other.f)
    }
}

impl Eq for Field {}

impl Field {
    /// Field with the default (lexicographically smallest) moduli.
    pub fn new(p: u32, m: u32, n: u32) -> Result<Self> {
        Self::with_moduli(p, m, n, None, None)
    }

    /// `g` has coefficients in F_p, `f` coefficients given as F_q indices;
    /// both low-degree-first. Non-monic moduli are scaled to monic.
    pub fn with_moduli(
        p: u32,
        m: u32,
        n: u32,
        g: Option<Vec<u32>>,
        f: Option<Vec<u32>>,
    ) -> Result<Self> {
        FieldCtx::build(p, m, n, g, f).map(|ctx| Field(Arc::new(ctx)))
    }

    /// A binary field F_{2^n} with the given modulus over F_2.
    pub fn binary(n: u32, f: Option<Vec<u32>>) -> Result<Self> {
        Self::with_moduli(2, 1, n, None, f)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), ScalarField::zero(&**self))
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), ScalarField::one(&**self))
    }

    /// The coset of x, which generates F_{q^n} over F_q.
    pub fn generator(&self) -> FieldElement {
        let mut c = vec![0; self.nu()];
        c[1] = 1;
        FieldElement::from_raw(self.clone(), c)
    }

    /// Inverse of [`FieldElement::index`].
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(FieldElement::from_raw(self.clone(), self.raw_from_index(index)))
    }

    /// The F_q element with the given index, embedded as a constant.
    pub fn base_element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.q,
            });
        }
        self.element(index)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.p as i64) as u32;
        self.element(r as u64).expect("p < q^n")
    }

    /// Element from its F_q coefficients in the polynomial basis.
    pub fn from_coeffs(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.nu() {
            return Err(Error::InvalidFormat(format!(
                "expected {} coefficients, got {}",
                self.n,
                coeffs.len()
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c as u64 >= self.q) {
            return Err(Error::CoefficientOutOfRange {
                value: bad as u64,
                bound: self.q,
            });
        }
        Ok(FieldElement::from_raw(self.clone(), coeffs))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| FieldElement::from_raw(self.clone(), self.raw_from_index(i)))
    }

    /// Nonzero elements of F_q, embedded.
    pub fn base_units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |i| self.element(i).expect("q <= q^n"))
    }

    pub fn check_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }
}

/// An element of F_{q^n}.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u32>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.index())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FieldElement {
    pub(crate) fn from_raw(field: Field, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.len(), field.n as usize);
        Self { field, coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// F_q coefficients in the polynomial basis, low-degree-first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Flat F_p coordinates, `m·n` digits, digit `j·m + a` multiplying `y^a x^j`.
    pub fn fp_coords(&self) -> Vec<u32> {
        let p = self.field.p;
        let m = self.field.m as usize;
        let mut out = Vec::with_capacity(m * self.coeffs.len());
        for &c in &self.coeffs {
            let mut c = c;
            for _ in 0..m {
                out.push(c % p);
                c /= p;
            }
        }
        out
    }

    pub fn index(&self) -> u64 {
        self.field.raw_index(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn lift(&self, coeffs: Vec<u32>) -> Self {
        Self::from_raw(self.field.clone(), coeffs)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(self.field.add(&self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(self.field.sub(&self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        Ok(self.lift(self.field.mul(&self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.field.check_same(&rhs.field)?;
        let inv = rhs.inv()?;
        Ok(self.lift(self.field.mul(&self.coeffs, &inv.coeffs)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(&self.coeffs)
            .map(|c| self.lift(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u128) -> Self {
        self.lift(self.field.raw_pow(&self.coeffs, e))
    }

    /// Power with an arbitrary exponent, reduced through the group order.
    pub fn pow_big(&self, e: &BigUint) -> Self {
        if e.is_zero() {
            return self.field.one();
        }
        if self.is_zero() {
            return self.clone();
        }
        let group = BigUint::from(self.field.order - 1);
        let r = (e % &group).to_u128().expect("reduced below 2^64");
        self.pow(r)
    }

    /// `z^{q^i}`; `i` is taken mod n.
    pub fn frobenius(&self, i: i64) -> Self {
        self.lift(self.field.raw_frob(&self.coeffs, i))
    }

    /// Relative trace onto F_{q^d}: `Σ_{i<n/d} z^{q^{d i}}`.
    pub fn rel_trace(&self, d: u32) -> Result<Self> {
        let n = self.field.n;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::NotADivisor { divisor: d, n });
        }
        let f = &*self.field;
        let mut acc = ScalarField::zero(f);
        for i in 0..n / d {
            acc = f.add(&acc, &f.raw_frob(&self.coeffs, (i * d) as i64));
        }
        Ok(self.lift(acc))
    }

    /// Membership in F_{q^d}, tested as `z^{q^d} = z`.
    pub fn in_subfield(&self, d: u32) -> Result<bool> {
        let n = self.field.n;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::NotADivisor { divisor: d, n });
        }
        Ok(self.field.raw_frob(&self.coeffs, d as i64) == self.coeffs)
    }

    /// Membership in F_q, tested as fixed by the q-Frobenius.
    pub fn in_base_field(&self) -> bool {
        self.field.raw_frob(&self.coeffs, 1) == self.coeffs
    }

    /// The F_q index of an element lying in F_q.
    pub fn base_index(&self) -> Option<u32> {
        self.in_base_field().then_some(self.coeffs[0])
    }

    /// Multiplicative order of a nonzero element of F_q.
    pub fn base_order(&self) -> Option<u64> {
        self.base_index()
            .and_then(|c| self.field.base.order_of(c))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;

            /// Panics if the operands come from different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }

        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.lift(self.field.neg(&self.coeffs))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}
