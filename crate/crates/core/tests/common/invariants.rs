//! Invariant checks as plain functions, run both by `proptest!` suites and
//! by explicit runners in the acceptance test.

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use gin_core::algebra::{degrevlex_cmp, groebner, Monomial};
use gin_core::series::{ci_series, sigma_profile, DegreeType, TruncatedSeries};

use super::strategies::{build, Case};

pub type Outcome = Result<(), TestCaseError>;

pub fn as_i128(s: &TruncatedSeries) -> Vec<i128> {
    s.coeffs()
        .iter()
        .map(|c| i128::try_from(c).unwrap())
        .collect()
}

pub fn ceiling_idempotent(s: &TruncatedSeries) -> Outcome {
    let once = s.ceiling();
    prop_assert_eq!(once.ceiling(), once);
    Ok(())
}

pub fn ceiling_nonnegative_zero_tail(s: &TruncatedSeries) -> Outcome {
    let c = as_i128(&s.ceiling());
    prop_assert!(c.iter().all(|&x| x >= 0));
    if let Some(first_zero) = c.iter().position(|&x| x == 0) {
        prop_assert!(c[first_zero..].iter().all(|&x| x == 0));
    }
    prop_assert_eq!(c, super::ceiling(&as_i128(s)));
    Ok(())
}

pub fn ci_symmetric(t: &DegreeType) -> Outcome {
    let c = as_i128(&ci_series(t).unwrap());
    let delta = sigma_profile(t).top_delta() as usize;
    prop_assert_eq!(c.len(), delta + 1);
    for i in 0..=delta {
        prop_assert_eq!(c[i], c[delta - i]);
    }
    prop_assert_eq!(c, super::ci_coeffs(t.degrees()));
    Ok(())
}

/// Strictly increasing through `sigma`, then flat until `delta - sigma`.
pub fn ci_unimodal(t: &DegreeType) -> Outcome {
    let c = as_i128(&ci_series(t).unwrap());
    let delta = sigma_profile(t).top_delta();
    let Some(sigma) = sigma_profile(t).top_sigma() else {
        return Ok(());
    };
    for i in 1..=sigma as usize {
        prop_assert!(c[i - 1] < c[i], "not increasing at {} in {:?}", i, c);
    }
    for i in sigma..=delta - sigma {
        prop_assert_eq!(c[i as usize], c[sigma as usize]);
    }
    Ok(())
}

pub fn order_total(a: &Monomial, b: &Monomial, c: &Monomial) -> Outcome {
    let (ea, eb) = (super::exps_of(a), super::exps_of(b));
    prop_assert_eq!(a.cmp(b), super::degrevlex(&ea, &eb));
    prop_assert_eq!(degrevlex_cmp(a, b).unwrap(), a.cmp(b));
    prop_assert_eq!(a.cmp(b), b.cmp(a).reverse());
    prop_assert_eq!(a == b, a.cmp(b) == Ordering::Equal);
    if a > b && b > c {
        prop_assert!(a > c);
    }
    Ok(())
}

pub fn order_multiplicative(a: &Monomial, b: &Monomial, c: &Monomial) -> Outcome {
    if a > b {
        prop_assert!(a.mul(c) > b.mul(c));
    }
    if a.degree() > b.degree() {
        prop_assert!(a > b);
    }
    prop_assert!(a.mul(c) >= *a);
    Ok(())
}

/// `NF(NF f) = NF f`, `NF(alpha f + beta h) = alpha NF f + beta NF h`, and
/// no term of `NF f` lies in the initial ideal.
pub fn normal_form_laws(
    case: &Case,
    k: u32,
    fa: &[(u32, bool)],
    fb: &[(u32, bool)],
    alpha: u32,
    beta: u32,
) -> Outcome {
    let Case { field, n, forms } = case;
    let (field, n) = (*field, *n);
    let basis = groebner(field, forms, 6).unwrap();
    let f = build(field, n, k, fa);
    let h = build(field, n, k, fb);
    let nf_f = basis.normal_form(&f).unwrap();
    let nf_h = basis.normal_form(&h).unwrap();
    prop_assert_eq!(basis.normal_form(&nf_f).unwrap(), nf_f.clone());

    let alpha = field.reduce(u64::from(alpha));
    let beta = field.reduce(u64::from(beta));
    let combo = f.scale(field, alpha).add(field, &h.scale(field, beta));
    let expected = nf_f
        .scale(field, alpha)
        .add(field, &nf_h.scale(field, beta));
    prop_assert_eq!(basis.normal_form(&combo).unwrap(), expected);

    let initial = basis.initial_ideal();
    prop_assert!(nf_f.terms().iter().all(|(_, m)| !initial.contains(m)));
    Ok(())
}

pub fn hilbert_matches_macaulay(case: &Case, bound: u32) -> Outcome {
    let Case { field, n, forms } = case;
    let hf = groebner(*field, forms, bound)
        .unwrap()
        .initial_ideal()
        .hilbert_function_upto(bound);
    prop_assert_eq!(hf, super::macaulay_hilbert_upto(*field, *n, forms, bound));
    Ok(())
}
