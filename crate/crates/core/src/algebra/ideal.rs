use serde::{Deserialize, Serialize};

use super::monomial::{monomials_of_degree, Monomial};
use crate::series::TruncatedSeries;

/// A monomial ideal stored by its minimal generators, sorted decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl From<IdealRepr> for MonomialIdeal {
    fn from(r: IdealRepr) -> Self {
        MonomialIdeal::new(r.nvars, r.generators)
    }
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(i: MonomialIdeal) -> Self {
        IdealRepr {
            nvars: i.nvars,
            generators: i.gens,
        }
    }
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            gens: Vec::new(),
        }
    }

    /// Minimalizes the given monomials.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        assert!(all.iter().all(|m| m.nvars() == nvars), "ring mismatch");
        // Ascending degree, so any divisor of a candidate is seen first.
        all.sort_unstable();
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        kept.reverse();
        Self { nvars, gens: kept }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators, degrevlex-decreasing.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_minimal_generator(&self, m: &Monomial) -> bool {
        self.gens.binary_search_by(|g| m.cmp(g)).is_ok()
    }

    pub fn union(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).copied())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().copied().chain(extra))
    }

    /// Generators of degree at most `t`.
    pub fn truncated(&self, t: u32) -> MonomialIdeal {
        Self {
            nvars: self.nvars,
            gens: self
                .gens
                .iter()
                .filter(|g| g.degree() <= t)
                .copied()
                .collect(),
        }
    }

    /// The image under `x_i -> 0` for `i >= keep`: generators involving a
    /// dropped variable vanish, the rest keep their exponents.
    pub fn project(&self, keep: usize) -> MonomialIdeal {
        MonomialIdeal::new(keep, self.gens.iter().filter_map(|g| g.with_nvars(keep)))
    }

    pub fn embed(&self, nvars: usize) -> MonomialIdeal {
        Self {
            nvars,
            gens: self
                .gens
                .iter()
                .map(|g| g.with_nvars(nvars).expect("growing is total"))
                .collect(),
        }
    }

    /// Degree-`t` monomials outside the ideal, decreasing.
    pub fn standard_monomials(&self, t: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, t)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// `dim_K (R/I)_t`, by enumeration.
    pub fn hilbert_function(&self, t: u32) -> u64 {
        self.standard_monomials(t).len() as u64
    }

    pub fn hilbert_function_upto(&self, bound: u32) -> Vec<u64> {
        (0..=bound).map(|t| self.hilbert_function(t)).collect()
    }

    /// Hilbert series of `R/I` through `bound`, via the numerator
    /// `K(I)` of `HS = K(I) / (1 - z)^n`. `K` obeys
    /// `K(I) = K(I + (x)) + z * K(I : x)` for a variable `x`, bottoming out at
    /// ideals generated by pure powers, where `K = prod (1 - z^{a_j})`.
    pub fn hilbert_series(&self, bound: usize) -> TruncatedSeries {
        let mut s = numerator(self.nvars, &self.gens, bound);
        for _ in 0..self.nvars {
            s = s.divide_by_one_minus_z();
        }
        s
    }
}

fn numerator(nvars: usize, gens: &[Monomial], bound: usize) -> TruncatedSeries {
    let pivot = gens.iter().find_map(|g| {
        let mut support = g.exponents().iter().enumerate().filter(|(_, &e)| e > 0);
        let first = support.next();
        support.next().and(first).map(|(i, _)| i)
    });
    let Some(var) = pivot else {
        let mut s = TruncatedSeries::one(bound);
        for g in gens {
            let f = TruncatedSeries::one_minus_power(g.degree() as usize, bound);
            s = s.mul_truncated(&f).expect("same bound");
        }
        return s;
    };
    let x = Monomial::var(nvars, var);
    let with_var = MonomialIdeal::new(nvars, gens.iter().copied().chain([x]));
    let colon = MonomialIdeal::new(nvars, gens.iter().map(|g| g.div(&x).unwrap_or(*g)));
    let left = numerator(nvars, &with_var.gens, bound);
    let mut right = numerator(nvars, &colon.gens, bound);
    // multiply by z
    right = TruncatedSeries::from_coeffs(
        std::iter::once(num_bigint::BigInt::from(0)).chain(right.coeffs().iter().cloned()),
        bound,
    );
    let coeffs = left.coeffs().iter().zip(right.coeffs()).map(|(a, b)| a + b);
    TruncatedSeries::from_coeffs(coeffs, bound)
}
