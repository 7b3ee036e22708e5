//! `L_r + α·Tr + β·x` from the base-field family, against an oracle that
//! works with integer coefficient lists over F_p.

mod common;

use common::field;
use nlpoly::perm::{build_general, is_complete};
use nlpoly::{ConventionalPoly, Field, LinearizedPoly};

/// Coefficients (indexed by q-degree) of the linearized associate of
/// `r(x)(x^u - 1)^d` folded mod n, plus `α` on every term and `β` on x.
fn oracle(p: i64, n: usize, u: usize, d: usize, r: &[i64], alpha: i64, beta: i64) -> Vec<i64> {
    let mut l = r.iter().map(|c| c.rem_euclid(p)).collect::<Vec<_>>();
    for _ in 0..d {
        let mut next = vec![0; l.len() + u];
        for (i, &c) in l.iter().enumerate() {
            next[i + u] += c;
            next[i] -= c;
        }
        l = next.into_iter().map(|c| c.rem_euclid(p)).collect();
    }
    let mut out = vec![alpha.rem_euclid(p); n];
    out[0] += beta;
    for (i, c) in l.into_iter().enumerate() {
        out[i % n] += c;
    }
    out.into_iter().map(|c| c.rem_euclid(p)).collect()
}

/// Every nonzero r of degree at most `max_deg` over F_p, as digit lists.
fn all_r(p: i64, max_deg: usize) -> impl Iterator<Item = Vec<i64>> {
    let count = p.pow(max_deg as u32 + 1);
    (1..count).map(move |mut idx| {
        let mut r = Vec::new();
        while idx > 0 {
            r.push(idx % p);
            idx /= p;
        }
        r
    })
}

fn check_field(f: &Field, t: usize, u: usize, d: usize, alpha: i64, beta: i64) -> usize {
    let p = f.p() as i64;
    let n = f.n() as usize;
    let v = n - 1 - u * d;
    let mut checked = 0;
    for r in all_r(p, v) {
        let r_poly = ConventionalPoly::from_ints(f, &r);
        let spec = build_general(&r_poly, t, &f.from_int(alpha), &f.from_int(beta)).unwrap();
        let got: Vec<i64> = spec.sum().coeff_indices().into_iter().map(|c| c as i64).collect();
        assert_eq!(got, oracle(p, n, u, d, &r, alpha, beta), "r = {r_poly}");
        checked += 1;
    }
    checked
}

#[test]
fn binary_table_field_matches_oracle_for_every_r() {
    // n = 6 = 2·3, t = 2: d = 1, u = 3, deg r ≤ 2
    let f = field("2^1:6");
    assert_eq!(check_field(&f, 2, 3, 1, 1, 1), 7);
}

#[test]
fn ternary_table_field_matches_oracle_for_every_r() {
    // n = 3, t = 3: d = 1, u = 1, deg r ≤ 1
    let f = field("3^1:3");
    assert_eq!(check_field(&f, 3, 1, 1, 1, -1), 8);
}

#[test]
fn ternary_rows_with_leading_minus_x() {
    let f = field("3^1:3");
    let run = |r: &[i64]| {
        let r = ConventionalPoly::from_ints(&f, r);
        build_general(&r, 3, &f.one(), &f.from_int(-1)).unwrap().sum().to_string()
    };
    let out = |r: &[i64]| oracle(3, 3, 1, 1, r, 1, -1);
    // (1 - x)(x - 1) = -x^2 - x - 1 folds to -x^9 - x^3 - x; adding x^9 + x^3
    // leaves -x
    assert_eq!(out(&[1, -1]), vec![2, 0, 0]);
    assert_eq!(run(&[1, -1]), "-x");
    // (-1 - x)(x - 1) = 1 - x^2 gives x^3 + x
    assert_eq!(out(&[-1, -1]), vec![1, 1, 0]);
    assert_eq!(run(&[-1, -1]), "x^3 + x");
}

#[test]
fn complete_when_beta_is_not_minus_one() {
    let f = field("3^1:3");
    for r in all_r(3, 1) {
        let r = ConventionalPoly::from_ints(&f, &r);
        let spec = build_general(&r, 3, &f.one(), &f.one()).unwrap();
        assert!(is_complete(&spec), "r = {r}");
        // L + k + x hits every element
        let plus_x = spec.sum() + &LinearizedPoly::identity(&f);
        let mut image: Vec<u64> = f.elements().map(|z| plus_x.eval(&z).unwrap().index()).collect();
        image.sort_unstable();
        assert_eq!(image, (0..27).collect::<Vec<_>>());
    }
}
