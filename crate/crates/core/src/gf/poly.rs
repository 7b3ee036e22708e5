//! Dense univariate polynomials over any [`ScalarField`], coefficients
//! stored low-degree-first. Used for modulus validation and for
//! conventional q-associates.

use super::scalar::ScalarField;

pub fn trim<F: ScalarField>(f: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

/// `None` for the zero polynomial.
pub fn degree<F: ScalarField>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let zero = f.zero();
    let mut out: Vec<F::Elem> = (0..len)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let zero = f.zero();
    let mut out: Vec<F::Elem> = (0..len)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(ai, bj));
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `None` when `b` is zero.
pub fn divrem<F: ScalarField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Option<(Vec<F::Elem>, Vec<F::Elem>)> {
    let db = degree(f, b)?;
    let lead_inv = f.inv(&b[db])?;
    let mut rem: Vec<F::Elem> = a.to_vec();
    trim(f, &mut rem);
    if rem.len() <= db {
        return Some((Vec::new(), rem));
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    for d in (db..rem.len()).rev() {
        if f.is_zero(&rem[d]) {
            continue;
        }
        let c = f.mul(&rem[d], &lead_inv);
        let shift = d - db;
        for (i, bi) in b[..=db].iter().enumerate() {
            rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, bi));
        }
        quot[shift] = c;
    }
    rem.truncate(db);
    trim(f, &mut rem);
    trim(f, &mut quot);
    Some((quot, rem))
}

pub fn rem<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).map(|(_, r)| r).unwrap_or_default()
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: ScalarField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &mut x);
    x
}

pub fn make_monic<F: ScalarField>(f: &F, a: &mut Vec<F::Elem>) {
    trim(f, a);
    if let Some(lead) = a.last() {
        let inv = f.inv(lead).expect("nonzero leading coefficient");
        for c in a.iter_mut() {
            *c = f.mul(c, &inv);
        }
    }
}

pub fn mulmod<F: ScalarField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), modulus)
}

pub fn powmod<F: ScalarField>(
    f: &F,
    base: &[F::Elem],
    mut e: u64,
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, modulus);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, modulus);
        }
    }
    acc
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a degree-d polynomial over a field of `order` elements is
/// irreducible iff `x^{order^d} = x` modulo it and
/// `gcd(x^{order^{d/r}} - x, poly) = 1` for every prime `r | d`.
pub fn is_irreducible<F: ScalarField>(f: &F, poly: &[F::Elem], order: u64) -> bool {
    let Some(d) = degree(f, poly) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let poly = &poly[..=d];
    if f.is_zero(&poly[0]) {
        return false;
    }
    let x = vec![f.zero(), f.one()];
    // frob[k] = x^{order^k} mod poly
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(rem(f, &x, poly));
    for k in 1..=d {
        let next = powmod(f, &frob[k - 1], order, poly);
        frob.push(next);
    }
    if sub(f, &frob[d], &x).iter().any(|c| !f.is_zero(c)) {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|r| {
        let h = sub(f, &frob[d / r as usize], &x);
        degree(f, &gcd(f, &h, poly)) == Some(0)
    })
}
