//! Input generators shared by the property suites and the acceptance run.

use proptest::prelude::*;

use gin_core::algebra::{monomials_of_degree, Monomial, Polynomial, PrimeField};
use gin_core::series::{DegreeType, TruncatedSeries};

pub fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-40i64..60, 1..20).prop_map(|c| {
        let bound = c.len() - 1;
        TruncatedSeries::from_coeffs(c, bound)
    })
}

pub fn any_type() -> impl Strategy<Value = DegreeType> {
    (1usize..=6, prop::collection::vec(1u32..=6, 1..=7))
        .prop_map(|(n, d)| DegreeType::new(n, d).unwrap())
}

pub fn square_type() -> impl Strategy<Value = DegreeType> {
    prop::collection::vec(1u32..=6, 1..=6).prop_map(|d| DegreeType::new(d.len(), d).unwrap())
}

pub fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=4, n).prop_map(|e| Monomial::new(&e).unwrap())
}

pub fn monomial_triple() -> impl Strategy<Value = (Monomial, Monomial, Monomial)> {
    (1usize..=6).prop_flat_map(|n| (monomial(n), monomial(n), monomial(n)))
}

pub fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![3u64, 5, 7, 101, 32003]).prop_map(|p| PrimeField::new(p).unwrap())
}

/// Coefficients for a form of degree `d` in `n` variables; each term is
/// kept with probability `density`.
pub fn form(n: usize, d: u32, density: f64) -> impl Strategy<Value = Vec<(u32, bool)>> {
    let len = monomials_of_degree(n, d).len();
    prop::collection::vec((1u32..u32::MAX, prop::bool::weighted(density)), len)
}

pub fn build(field: PrimeField, n: usize, d: u32, raw: &[(u32, bool)]) -> Polynomial {
    let terms = monomials_of_degree(n, d)
        .into_iter()
        .zip(raw)
        .filter(|(_, (_, keep))| *keep)
        .map(|(m, (c, _))| (*c, m));
    Polynomial::from_terms(field, n, terms).unwrap()
}

#[derive(Debug, Clone)]
pub struct Case {
    pub field: PrimeField,
    pub n: usize,
    pub forms: Vec<Polynomial>,
}

/// Up to four nonzero forms in at most `max_n` variables of degrees
/// `1..=max_deg`, dense or sparse.
pub fn ideal_case(max_n: usize, max_deg: u32) -> impl Strategy<Value = Case> {
    (
        field(),
        1usize..=max_n,
        prop::collection::vec(1u32..=max_deg, 1..=4),
        0.3f64..1.0,
    )
        .prop_flat_map(|(field, n, degrees, density)| {
            let raw: Vec<_> = degrees.iter().map(|&d| form(n, d, density)).collect();
            (Just(field), Just(n), Just(degrees), raw)
        })
        .prop_filter_map("all forms vanished", |(field, n, degrees, raw)| {
            let forms: Vec<Polynomial> = degrees
                .iter()
                .zip(&raw)
                .map(|(&d, r)| build(field, n, d, r))
                .filter(|f| !f.is_zero())
                .collect();
            (!forms.is_empty()).then_some(Case { field, n, forms })
        })
}
