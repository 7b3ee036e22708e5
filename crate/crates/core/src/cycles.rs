//! Cycle decomposition of permutations of F_{q^n}, the closed-form cycle
//! type of `L + γx` for 2-NLPs, and the per-element cycle-lifting check.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::compiled::CompiledMap;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::linpoly::LinearizedPoly;
use crate::nlp::NlpCertificate;
use crate::perm::{linear_order, AffinePerm, DEFAULT_ORDER_BUDGET};

/// Largest field decomposed by default (one visited bit per element).
pub const DEFAULT_CYCLE_BUDGET: u64 = 1 << 28;

/// Sorted `(length, count)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleStructure {
    cycles: Vec<(u64, u64)>,
}

impl CycleStructure {
    /// Merges repeated lengths and drops zero counts.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged = BTreeMap::new();
        for (len, count) in pairs {
            if count > 0 {
                *merged.entry(len).or_insert(0) += count;
            }
        }
        Self {
            cycles: merged.into_iter().collect(),
        }
    }

    /// Decomposition of a permutation given as a table `i -> table[i]`.
    pub fn from_table(table: &[u64]) -> Result<Self> {
        let n = table.len() as u64;
        decompose(n, |i| table[i as usize])
    }

    pub fn cycles(&self) -> &[(u64, u64)] {
        &self.cycles
    }

    /// `Σ length·count`.
    pub fn total(&self) -> u64 {
        self.cycles.iter().map(|(l, c)| l * c).sum()
    }

    /// Lcm of the cycle lengths; `None` if it overflows.
    pub fn order(&self) -> Option<u128> {
        self.cycles.iter().try_fold(1u128, |acc, &(l, _)| {
            let l = l as u128;
            (acc / acc.gcd(&l)).checked_mul(l)
        })
    }

    pub fn fixed_points(&self) -> u64 {
        self.cycles
            .iter()
            .find(|(l, _)| *l == 1)
            .map_or(0, |(_, c)| *c)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cycles.iter().map(|(l, c)| format!("{l}^{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn decompose(order: u64, next: impl Fn(u64) -> u64) -> Result<CycleStructure> {
    let mut visited = vec![0u64; order.div_ceil(64) as usize];
    let mut counts = BTreeMap::new();
    for start in 0..order {
        if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        let mut len = 0u64;
        let mut z = start;
        loop {
            let (w, b) = ((z / 64) as usize, z % 64);
            if visited[w] >> b & 1 == 1 {
                // reached an element of an older cycle: not injective
                return Err(Error::NotAPermutation);
            }
            visited[w] |= 1 << b;
            len += 1;
            z = next(z);
            if z >= order {
                return Err(Error::NotAPermutation);
            }
            if z == start {
                break;
            }
        }
        *counts.entry(len).or_insert(0u64) += 1;
    }
    Ok(CycleStructure {
        cycles: counts.into_iter().collect(),
    })
}

/// Exact decomposition by orbit-following; refuses fields above `budget`.
pub fn cycle_structure(f: &AffinePerm, budget: u64) -> Result<CycleStructure> {
    let order = f.field().order();
    if order > budget {
        return Err(Error::FieldTooLarge { order, budget });
    }
    let compiled = f.compile();
    decompose(order, |i| compiled.apply(i))
}

/// Closed form for `L + γx` with L a 2-NLP and `γ ∈ F_q^*` of order s:
/// one fixed point, `(z_L - 1)/s` s-cycles and `(q^n - z_L)/(ps)` ps-cycles,
/// where `z_L = |Z_L|`.
pub fn predict_linear_case(nlp: &NlpCertificate, gamma: &FieldElement) -> Result<CycleStructure> {
    if nlp.index() != 2 {
        return Err(Error::NotA2NLP);
    }
    nlp.field().check_same(gamma.field())?;
    if gamma.is_zero() {
        return Err(Error::GammaNotInBaseFieldStar);
    }
    let s = gamma.base_order().ok_or(Error::GammaNotInBaseFieldStar)?;
    let field = nlp.field();
    let p = field.p() as u64;
    let z_l = nlp.poly().kernel_image().0.size();
    let total = field.order();
    if !(z_l - 1).is_multiple_of(s) || !(total - z_l).is_multiple_of(p * s) {
        return Err(Error::InternalInconsistency(format!(
            "cycle counts not integral for z_L = {z_l}, s = {s}"
        )));
    }
    Ok(CycleStructure::new([
        (1, 1),
        (s, (z_l - 1) / s),
        (p * s, (total - z_l) / (p * s)),
    ]))
}

/// Cycle length of `a` under `f`, giving up after `budget` steps.
pub fn cycle_length(f: &CompiledMap, a: u64, budget: u64) -> Result<u64> {
    let mut z = f.apply(a);
    let mut len = 1;
    while z != a {
        if len >= budget {
            return Err(Error::OrderSearchExceeded(budget));
        }
        z = f.apply(z);
        len += 1;
    }
    Ok(len)
}

/// Outcome of the lifting check at one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCheck {
    /// Cycle length of a under k.
    pub m_a: u64,
    /// Cycle length of a under L + k.
    pub m_a_prime: u64,
    pub relation_ok: bool,
}

/// Precomputed data for sweeping the lifting relations over many elements.
pub struct LiftVerifier {
    l: LinearizedPoly,
    k: CompiledMap,
    sum: CompiledMap,
    p: u64,
    s: u64,
}

impl LiftVerifier {
    pub fn new(nlp: &NlpCertificate, k: &LinearizedPoly) -> Result<Self> {
        if nlp.index() != 2 {
            return Err(Error::NotA2NLP);
        }
        let l = nlp.poly();
        l.field().check_same(k.field())?;
        if !k.is_permutation() {
            return Err(Error::KNotPermutation);
        }
        if l.compose(k)? != k.compose(l)? {
            return Err(Error::NotCommuting);
        }
        let s = linear_order(k, DEFAULT_ORDER_BUDGET)?;
        Ok(Self {
            l: l.clone(),
            k: CompiledMap::linear(k),
            sum: CompiledMap::linear(&l.checked_add(k)?),
            p: l.field().p() as u64,
            s,
        })
    }

    /// Order of k.
    pub fn s(&self) -> u64 {
        self.s
    }

    /// `m_a' | lcm(m_a, p)` always, `m_a' = m_a` on the kernel, and when
    /// `gcd(s, p) = 1` also `m_a' = p·m_a` off the kernel.
    pub fn check(&self, a: &FieldElement) -> Result<LiftCheck> {
        let idx = a.index();
        let m_a = cycle_length(&self.k, idx, DEFAULT_ORDER_BUDGET)?;
        let m_a_prime = cycle_length(&self.sum, idx, DEFAULT_ORDER_BUDGET)?;
        let in_kernel = self.l.eval(a)?.is_zero();
        let mut ok = m_a.lcm(&self.p) % m_a_prime == 0;
        if in_kernel {
            ok &= m_a_prime == m_a;
        }
        if self.s.gcd(&self.p) == 1 && !in_kernel {
            ok &= m_a_prime == self.p * m_a;
        }
        Ok(LiftCheck {
            m_a,
            m_a_prime,
            relation_ok: ok,
        })
    }
}

/// One-shot form of [`LiftVerifier::check`].
pub fn verify_lift(nlp: &NlpCertificate, k: &LinearizedPoly, a: &FieldElement) -> Result<LiftCheck> {
    LiftVerifier::new(nlp, k)?.check(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::nlp::nlp_trace;

    #[test]
    fn identity_and_squaring_on_f4() {
        let f = Field::new(2, 1, 2).unwrap();
        let id = cycle_structure(&AffinePerm::identity(&f), 1 << 10).unwrap();
        assert_eq!(id.cycles(), &[(1, 4)]);
        let sq = AffinePerm::linear_map(LinearizedPoly::monomial(1, &f.one())).unwrap();
        let cs = cycle_structure(&sq, 1 << 10).unwrap();
        assert_eq!(cs.to_string(), "1^2 2^1");
        assert_eq!(cs.order(), Some(2));
        assert_eq!(cs.total(), 4);
    }

    #[test]
    fn prediction_for_trace_on_f4() {
        let f = Field::new(2, 1, 2).unwrap();
        let cert = nlp_trace(&f.one(), 1).unwrap();
        let pred = predict_linear_case(&cert, &f.one()).unwrap();
        assert_eq!(pred.cycles(), &[(1, 2), (2, 1)]);
        assert_eq!(
            predict_linear_case(&cert, &f.generator()).unwrap_err(),
            Error::GammaNotInBaseFieldStar
        );
    }

    #[test]
    fn budget_and_table_checks() {
        let f = Field::new(2, 1, 12).unwrap();
        assert_eq!(
            cycle_structure(&AffinePerm::identity(&f), 1024).unwrap_err(),
            Error::FieldTooLarge { order: 4096, budget: 1024 }
        );
        assert_eq!(CycleStructure::from_table(&[1, 1]).unwrap_err(), Error::NotAPermutation);
        assert_eq!(CycleStructure::from_table(&[1, 2, 0, 3]).unwrap().cycles(), &[(1, 1), (3, 1)]);
    }

    #[test]
    fn merging_when_s_is_one() {
        let c = CycleStructure::new([(1, 1), (1, 3), (2, 0), (2, 6)]);
        assert_eq!(c.cycles(), &[(1, 4), (2, 6)]);
    }

    #[test]
    fn lift_at_zero_and_kernel() {
        let f = Field::new(2, 1, 4).unwrap();
        let cert = nlp_trace(&f.one(), 2).unwrap();
        let k = LinearizedPoly::identity(&f);
        let zero = verify_lift(&cert, &k, &f.zero()).unwrap();
        assert_eq!((zero.m_a, zero.m_a_prime), (1, 1));
        assert!(zero.relation_ok);
        let off = verify_lift(&cert, &k, &f.generator()).unwrap();
        assert_eq!((off.m_a, off.m_a_prime), (1, 2));
        assert!(off.relation_ok);
    }
}
