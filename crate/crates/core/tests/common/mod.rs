//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the library's algebra: exponent vectors are plain
//! `Vec<u32>`, and elimination is a separate modular Gaussian routine.

#![allow(dead_code)]

pub mod invariants;
pub mod strategies;

use std::cmp::Ordering;

use gin_core::algebra::{Monomial, Polynomial, PrimeField};
use gin_core::series::DegreeType;

pub type Exps = Vec<u32>;

/// All exponent vectors of total degree `d` in `n` variables, in no
/// particular order.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Exps> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Degrevlex straight from the definition: higher degree wins; otherwise
/// the last nonzero entry of `a - b` is negative iff `a > b`.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        let diff = i64::from(*x) - i64::from(*y);
        if diff < 0 {
            return Ordering::Greater;
        }
        if diff > 0 {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

pub fn exps_of(m: &Monomial) -> Exps {
    m.exponents().iter().map(|&e| u32::from(e)).collect()
}

pub fn terms_of(f: &Polynomial) -> Vec<(u64, Exps)> {
    f.terms()
        .iter()
        .map(|(c, m)| (u64::from(*c), exps_of(m)))
        .collect()
}

/// Rank of a matrix over `Z/p` by plain row reduction; entries must
/// already be reduced.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim_K (R/I)_t` from the Macaulay matrix of `I` in degree `t`: all
/// products `x^a f` with `deg = t`, one column per monomial of degree `t`.
pub fn macaulay_hilbert(p: u64, n: usize, forms: &[Vec<(u64, Exps)>], t: u32) -> u64 {
    let mut cols = exponent_vectors(n, t);
    cols.sort_by(|a, b| degrevlex(b, a));
    let index = |e: &Exps| cols.iter().position(|c| c == e).expect("degree t");
    let mut rows = Vec::new();
    for f in forms {
        let Some((_, lead)) = f.first() else { continue };
        let df: u32 = lead.iter().sum();
        if df > t {
            continue;
        }
        for shift in exponent_vectors(n, t - df) {
            let mut row = vec![0u64; cols.len()];
            for (c, e) in f {
                let prod: Exps = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let k = index(&prod);
                row[k] = (row[k] + c) % p;
            }
            rows.push(row);
        }
    }
    (cols.len() - rank_mod_p(rows, p)) as u64
}

pub fn macaulay_hilbert_upto(
    p: PrimeField,
    n: usize,
    forms: &[Polynomial],
    bound: u32,
) -> Vec<u64> {
    let forms: Vec<_> = forms.iter().map(terms_of).collect();
    (0..=bound)
        .map(|t| macaulay_hilbert(u64::from(p.modulus()), n, &forms, t))
        .collect()
}

/// Coefficients of `prod (1 - z^{d_i}) / (1 - z)^n` through `bound`,
/// computed with `i128` by repeated prefix sums.
pub fn raw_series(t: &DegreeType, bound: usize) -> Vec<i128> {
    let mut c = vec![0i128; bound + 1];
    c[0] = 1;
    for &d in t.degrees() {
        let d = d as usize;
        for k in (d..=bound).rev() {
            c[k] -= c[k - d];
        }
    }
    for _ in 0..t.n() {
        for k in 1..=bound {
            c[k] += c[k - 1];
        }
    }
    c
}

/// Truncate at the first non-positive coefficient.
pub fn ceiling(c: &[i128]) -> Vec<i128> {
    let cut = c.iter().position(|&x| x <= 0).unwrap_or(c.len());
    c.iter()
        .enumerate()
        .map(|(i, &x)| if i < cut { x } else { 0 })
        .collect()
}

/// `(1 + z + ... + z^{d-1})` product for a complete intersection.
pub fn ci_coeffs(degrees: &[u32]) -> Vec<i128> {
    let mut c = vec![1i128];
    for &d in degrees {
        let mut next = vec![0i128; c.len() + d as usize - 1];
        for (i, &x) in c.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += x;
            }
        }
        c = next;
    }
    c
}
