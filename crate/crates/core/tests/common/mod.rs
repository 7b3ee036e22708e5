//! Suites of NLPs and commuting permutations shared by the integration
//! tests, plus brute-force oracles that only use field evaluation.
#![allow(dead_code)]

use nlpoly::compiled::CompiledMap;
use nlpoly::nlp::{alpha_beta_family, nlp_base_field, nlp_trace, NlpCertificate};
use nlpoly::{ConventionalPoly, Field, FieldElement, LinearizedPoly};

pub fn field(spec: &str) -> Field {
    spec.parse().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Every nonzero linearized polynomial with coefficients in F_q.
pub fn base_coefficient_polys(field: &Field) -> impl Iterator<Item = LinearizedPoly> + '_ {
    let q = field.q();
    let n = field.n();
    (1..q.pow(n)).map(move |mut idx| {
        let coeffs: Vec<FieldElement> = (0..n)
            .map(|_| {
                let d = idx % q;
                idx /= q;
                field.element(d).unwrap()
            })
            .collect();
        LinearizedPoly::new(field, &coeffs).unwrap()
    })
}

/// `θ·Tr_{F_{q^n}/F_{q^d}}` for the first few nonzero θ of trace zero, over
/// every proper divisor d.
pub fn trace_nlps(field: &Field, per_divisor: usize) -> Vec<NlpCertificate> {
    let n = field.n();
    let mut out = Vec::new();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let thetas = field
            .elements()
            .skip(1)
            .filter(|th| th.rel_trace(d).unwrap().is_zero())
            .take(per_divisor);
        for th in thetas {
            out.push(nlp_trace(&th, d).unwrap());
        }
    }
    out
}

/// An evenly spaced sample of the α/β family (empty for odd n).
pub fn alpha_beta_nlps(field: &Field, cap: usize) -> Vec<NlpCertificate> {
    if !field.n().is_multiple_of(2) {
        return Vec::new();
    }
    let all = alpha_beta_family(field).unwrap();
    let stride = all.len().div_ceil(cap).max(1);
    all.into_iter().step_by(stride).collect()
}

/// Base-field NLPs `l_{r,t}` for every admissible t and the first few r.
pub fn base_field_nlps(field: &Field, per_t: usize) -> Vec<NlpCertificate> {
    let q = field.q();
    let mut out = Vec::new();
    for t in 2..=field.n() as usize {
        let mut found = 0;
        for idx in 1..q.pow(field.n()) {
            if found == per_t {
                break;
            }
            let mut rest = idx;
            let mut coeffs = Vec::new();
            while rest > 0 {
                coeffs.push((rest % q) as u32);
                rest /= q;
            }
            let r = ConventionalPoly::from_base_indices(field, coeffs).unwrap();
            match nlp_base_field(&r, t) {
                Ok(cert) => {
                    out.push(cert);
                    found += 1;
                }
                Err(_) => break,
            }
        }
    }
    out
}

pub fn nlp_suite(field: &Field) -> Vec<NlpCertificate> {
    let mut out = trace_nlps(field, 3);
    out.extend(alpha_beta_nlps(field, 6));
    out.extend(base_field_nlps(field, 3));
    out
}

/// Linearized permutations commuting with L: `γx` for `γ ∈ F_q^*`, and
/// `γx + c·L` for a few `c ∈ F_q^*` (unipotent twists of a scalar).
pub fn commuting_ks(nlp: &NlpCertificate) -> Vec<LinearizedPoly> {
    let field = nlp.field();
    let l = nlp.poly();
    let mut out = Vec::new();
    for gamma in field.base_units() {
        out.push(LinearizedPoly::scalar(&gamma));
        for c in field.base_units().take(2) {
            out.push(&LinearizedPoly::scalar(&gamma) + &l.scale(&c).unwrap());
        }
    }
    out
}

/// Orbit length of `a` under a compiled map, by plain iteration.
pub fn orbit_len(f: &CompiledMap, a: u64) -> u64 {
    let mut z = f.apply(a);
    let mut len = 1;
    while z != a {
        z = f.apply(z);
        len += 1;
    }
    len
}

/// Order of a permutation table as the lcm of all orbit lengths, without
/// any bookkeeping shared with the library's decomposition.
pub fn table_order(table: &[u64]) -> u64 {
    let mut order = 1u64;
    for start in 0..table.len() as u64 {
        let mut z = table[start as usize];
        let mut len = 1u64;
        while z != start {
            z = table[z as usize];
            len += 1;
        }
        order = num_lcm(order, len);
    }
    order
}

fn num_lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Multiplicative order of `γ ∈ F_q^*` by repeated multiplication.
pub fn mult_order(gamma: &FieldElement) -> u64 {
    let mut acc = gamma.clone();
    let mut d = 1;
    while !acc.is_one() {
        acc = &acc * gamma;
        d += 1;
    }
    d
}
