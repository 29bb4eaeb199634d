use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A sparse polynomial over a prime field. Terms are kept in strictly
/// decreasing degrevlex order with nonzero coefficients. The field itself
/// is not stored; operations that need it take a [`PrimeField`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, Monomial)>", into = "Vec<(u32, Monomial)>")]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(u32, Monomial)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn monomial(coeff: u32, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        if coeff != 0 {
            p.terms.push((coeff, m));
        }
        p
    }

    /// Collects terms, summing repeated monomials mod `p` and dropping zeros.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (u32, Monomial)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (c, m) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, field.reduce(u64::from(c)));
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (c, m))
            .collect();
        Ok(Self { nvars, terms })
    }

    /// Wraps terms already in strictly decreasing order with nonzero
    /// coefficients (checked in debug builds).
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(u32, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].1 > w[1].1));
        debug_assert!(terms.iter().all(|(c, _)| *c != 0));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.1)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }

    /// Total degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].1.degree() == w[1].1.degree())
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(_, t)| m.cmp(t))
            .map(|i| self.terms[i].0)
            .unwrap_or(0)
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|&(a, m)| (field.mul(a, c), m))
            .collect();
        Self::from_sorted_terms(self.nvars, terms)
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|&(c, t)| (c, t.mul(m))).collect();
        Self::from_sorted_terms(self.nvars, terms)
    }

    pub fn monic(&self, field: PrimeField) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(field, field.inv(c)),
        }
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, field: PrimeField, c: u32, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.1.cmp(&b.1),
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, _) => std::cmp::Ordering::Less,
            };
            match take_left {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (b, m) = other.terms[j];
                    let v = field.mul(b, c);
                    if v != 0 {
                        out.push((v, m));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = field.add(self.terms[i].0, field.mul(other.terms[j].0, c));
                    if v != 0 {
                        out.push((v, self.terms[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted_terms(self.nvars, out)
    }

    pub fn add(&self, field: PrimeField, other: &Self) -> Self {
        self.add_scaled(field, 1, other)
    }

    pub fn sub(&self, field: PrimeField, other: &Self) -> Self {
        self.add_scaled(field, field.neg(1), other)
    }

    /// Substitutes `x_i = 0` for every variable index `i >= keep` and drops
    /// those variables from the ring.
    pub fn project(&self, keep: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(c, m)| m.with_nvars(keep).map(|m| (c, m)))
            .collect();
        // Dropping trailing variables that are zero keeps degrevlex order.
        Self::from_sorted_terms(keep, terms)
    }

    /// The same polynomial viewed in a ring with more variables.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|&(c, m)| (c, m.with_nvars(nvars).expect("growing is total")))
            .collect();
        Self::from_sorted_terms(nvars, terms)
    }
}

impl TryFrom<Vec<(u32, Monomial)>> for Polynomial {
    type Error = Error;

    fn try_from(terms: Vec<(u32, Monomial)>) -> Result<Self> {
        let nvars = terms.first().map_or(0, |t| t.1.nvars());
        if terms.iter().any(|t| t.1.nvars() != nvars || t.0 == 0) {
            return Err(Error::Precondition("malformed polynomial terms".into()));
        }
        if !terms.windows(2).all(|w| w[0].1 > w[1].1) {
            return Err(Error::Precondition("terms not strictly decreasing".into()));
        }
        Ok(Self { nvars, terms })
    }
}

impl From<Polynomial> for Vec<(u32, Monomial)> {
    fn from(p: Polynomial) -> Self {
        p.terms
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
