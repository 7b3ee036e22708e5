//! Permutations `L + k` built from a t-NLP `L` and a commuting linearized
//! permutation `k`, with their compositional inverses and order predictions.

use num_integer::Integer;

use crate::compiled::CompiledMap;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linpoly::{ConventionalPoly, LinearizedPoly, Subspace};
use crate::nlp::{nlp_base_field, NlpCertificate};

/// Default step budget for order computations.
pub const DEFAULT_ORDER_BUDGET: u64 = 1 << 28;

/// `linear(z) + shift` with a bijective linear part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePerm {
    linear: LinearizedPoly,
    shift: FieldElement,
}

impl AffinePerm {
    pub fn new(linear: LinearizedPoly, shift: FieldElement) -> Result<Self> {
        linear.field().check_same(shift.field())?;
        if !linear.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        Ok(Self { linear, shift })
    }

    pub fn linear_map(linear: LinearizedPoly) -> Result<Self> {
        let zero = linear.field().zero();
        Self::new(linear, zero)
    }

    pub fn identity(field: &Field) -> Self {
        Self {
            linear: LinearizedPoly::identity(field),
            shift: field.zero(),
        }
    }

    pub fn field(&self) -> &Field {
        self.linear.field()
    }

    pub fn linear(&self) -> &LinearizedPoly {
        &self.linear
    }

    pub fn shift(&self) -> &FieldElement {
        &self.shift
    }

    pub fn eval(&self, z: &FieldElement) -> Result<FieldElement> {
        Ok(self.linear.eval(z)? + &self.shift)
    }

    /// `self ∘ other`: `z -> A(B z + b) + a`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            linear: self.linear.compose(&other.linear)?,
            shift: self.linear.eval(&other.shift)? + &self.shift,
        })
    }

    pub fn compile(&self) -> CompiledMap {
        CompiledMap::new(&self.linear, &self.shift)
    }

    /// `f ∘ f = id`, decided symbolically.
    pub fn is_involution(&self) -> bool {
        let sq = self.compose(self).expect("same field");
        sq.linear.is_identity() && sq.shift.is_zero()
    }

    /// No `z` with `A(z) + b = z`, i.e. `-b` is outside the image of `A - x`.
    pub fn is_fixed_point_free(&self) -> bool {
        let field = self.field();
        let diff = &self.linear - &LinearizedPoly::identity(field);
        let image: Subspace = diff.kernel_image().1;
        !image.contains(&-&self.shift).expect("same field")
    }
}

/// The data of the permutation theorem: an NLP `L`, a linearized
/// permutation `k` commuting with it, and `s = O(k)`.
#[derive(Debug, Clone)]
pub struct PermSpec {
    nlp: NlpCertificate,
    k: LinearizedPoly,
    s: u64,
    sum: LinearizedPoly,
}

/// Order bounds for `L + k`: it always divides `divisor_bound`, and equals
/// `exact` when that is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderPrediction {
    pub divisor_bound: u64,
    pub exact: Option<u64>,
}

impl PermSpec {
    pub fn nlp(&self) -> &NlpCertificate {
        &self.nlp
    }

    pub fn field(&self) -> &Field {
        self.nlp.field()
    }

    pub fn k(&self) -> &LinearizedPoly {
        &self.k
    }

    /// Nilpotency index of L.
    pub fn t(&self) -> usize {
        self.nlp.index()
    }

    /// Order of k under composition.
    pub fn s(&self) -> u64 {
        self.s
    }

    /// `L + k`.
    pub fn sum(&self) -> &LinearizedPoly {
        &self.sum
    }

    pub fn affine(&self) -> AffinePerm {
        AffinePerm {
            linear: self.sum.clone(),
            shift: self.field().zero(),
        }
    }
}

/// Checks the hypotheses (k bijective, `L ⊗ k = k ⊗ L`) and computes s.
pub fn build_perm(nlp: NlpCertificate, k: LinearizedPoly) -> Result<PermSpec> {
    build_perm_with_budget(nlp, k, DEFAULT_ORDER_BUDGET)
}

pub fn build_perm_with_budget(nlp: NlpCertificate, k: LinearizedPoly, budget: u64) -> Result<PermSpec> {
    let l = nlp.poly();
    l.field().check_same(k.field())?;
    if !k.is_permutation() {
        return Err(Error::KNotPermutation);
    }
    if l.compose(&k)? != k.compose(l)? {
        return Err(Error::NotCommuting);
    }
    let s = linear_order(&k, budget)?;
    let sum = l.checked_add(&k)?;
    if !sum.is_permutation() {
        return Err(Error::InternalInconsistency(
            "L + k is not bijective for a commuting pair".into(),
        ));
    }
    Ok(PermSpec { nlp, k, s, sum })
}

/// `k = γx` for `γ ∈ F_q^*`, which commutes with every L.
pub fn build_scalar(nlp: NlpCertificate, gamma: &FieldElement) -> Result<PermSpec> {
    if gamma.is_zero() || !gamma.in_base_field() {
        return Err(Error::GammaNotInBaseFieldStar);
    }
    build_perm(nlp, LinearizedPoly::scalar(gamma))
}

/// `Σ_{i<t} (-1)^i L^{(i)} ⊗ k^{((s-1-i) mod s)}`.
pub fn comp_inverse(spec: &PermSpec) -> LinearizedPoly {
    let field = spec.field();
    let l = spec.nlp.poly();
    let s = spec.s;
    let minus_one = -field.one();
    let mut out = LinearizedPoly::zero(field);
    let mut l_power = LinearizedPoly::identity(field);
    let mut sign = field.one();
    for i in 0..spec.t() as u64 {
        let exp = (s as i128 - 1 - i as i128).rem_euclid(s as i128) as u64;
        let term = l_power.compose(&spec.k.pow(exp)).expect("same field");
        out = &out + &term.scale(&sign).expect("same field");
        l_power = l.compose(&l_power).expect("same field");
        sign = &sign * &minus_one;
    }
    out
}

/// Whether `L + k + x` is also bijective.
pub fn is_complete(spec: &PermSpec) -> bool {
    (&spec.sum + &LinearizedPoly::identity(spec.field())).is_permutation()
}

/// `divisor_bound = lcm(s, p^e)`, `e = ⌈log_p t⌉`; `exact = p·s` when
/// `t = 2` and `gcd(s, p) = 1`.
pub fn predicted_order(spec: &PermSpec) -> OrderPrediction {
    let p = spec.field().p() as u64;
    let t = spec.t() as u64;
    let mut pe = 1u64;
    while pe < t {
        pe *= p;
    }
    let exact = (t == 2 && spec.s.gcd(&p) == 1).then(|| p * spec.s);
    OrderPrediction {
        divisor_bound: spec.s.lcm(&pe),
        exact,
    }
}

/// `Σ_{i<n} x^{q^i}`.
pub fn absolute_trace(field: &Field) -> LinearizedPoly {
    let n = field.n() as usize;
    LinearizedPoly::new(field, &vec![field.one(); n]).expect("same field")
}

/// `L_r + α·Tr + β·x` with `L_r` from the base-field construction and
/// `α, β ∈ F_q^*`; k is `α·Tr + β·x`.
pub fn build_general(
    r: &ConventionalPoly,
    t: usize,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<PermSpec> {
    let field = r.field();
    field.check_same(alpha.field())?;
    field.check_same(beta.field())?;
    for c in [alpha, beta] {
        if c.is_zero() || !c.in_base_field() {
            return Err(Error::AlphaBetaNotInBaseField);
        }
    }
    let nlp = nlp_base_field(r, t)?;
    let k = &absolute_trace(field).scale(alpha)? + &LinearizedPoly::scalar(beta);
    build_perm(nlp, k)
}

/// Order of a bijective linear map: the lcm of the orbit lengths of the F_p
/// basis vectors. `budget` caps the total number of evaluation steps.
pub fn linear_order(map: &LinearizedPoly, budget: u64) -> Result<u64> {
    if !map.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let field = map.field();
    let compiled = CompiledMap::linear(map);
    let p = field.p() as u64;
    let mut order = 1u64;
    let mut steps = 0u64;
    for k in 0..field.m() * field.n() {
        let start = p.pow(k);
        let mut z = compiled.apply(start);
        let mut len = 1u64;
        while z != start {
            z = compiled.apply(z);
            len += 1;
            steps += 1;
            if steps > budget {
                return Err(Error::OrderSearchExceeded(budget));
            }
        }
        order = order.lcm(&len);
    }
    Ok(order)
}

/// Order by iterating `P -> map ⊗ P` until P is `x`; independent of
/// [`linear_order`].
pub fn order_by_composition(map: &LinearizedPoly, budget: u64) -> Result<u64> {
    if !map.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let mut power = map.clone();
    let mut d = 1u64;
    while !power.is_identity() {
        if d >= budget {
            return Err(Error::OrderSearchExceeded(budget));
        }
        power = map.compose(&power)?;
        d += 1;
    }
    Ok(d)
}
