//! Seeded sampling of generic forms and the genericity guard.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`): the generator is seeded
//! with `seed_from_u64(seed)` and switched to stream `resample_count`, so
//! every instance is fixed by `(type, prime, seed, resample_count)`. Each
//! coefficient is drawn uniformly from `[1, p-1]` by rejection on `next_u64`,
//! monomials in decreasing degrevlex order, forms in the order `d_1..d_r`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    groebner, monomials_of_degree, GroebnerBasis, MonomialIdeal, Polynomial, PrimeField,
};
use crate::error::{Error, Result};
use crate::series::{condition1_check, DegreeType, TruncatedSeries};

/// Number of samples the guard tries before giving up.
pub const RETRY_CAP: u32 = 8;

/// The random stream for `(seed, resample_count)`.
pub fn stream(seed: u64, resample_count: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(resample_count));
    rng
}

/// A uniform element of `[1, p-1]`.
pub fn draw_coefficient(field: PrimeField, rng: &mut impl RngCore) -> u32 {
    let span = u64::from(field.modulus() - 1);
    let limit = u64::MAX - u64::MAX % span;
    loop {
        let x = rng.next_u64();
        if x < limit {
            return 1 + (x % span) as u32;
        }
    }
}

/// A form of degree `d` in `n` variables with every monomial present.
pub fn sample_form(field: PrimeField, n: usize, d: u32, rng: &mut impl RngCore) -> Polynomial {
    let terms = monomials_of_degree(n, d)
        .into_iter()
        .map(|m| (draw_coefficient(field, rng), m));
    Polynomial::from_terms(field, n, terms).expect("monomials share the ring")
}

/// A sampled ideal with full provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericInstance {
    #[serde(rename = "type")]
    pub degree_type: DegreeType,
    pub prime: PrimeField,
    pub seed: u64,
    pub resample_count: u32,
    pub forms: Vec<Polynomial>,
}

impl GenericInstance {
    pub fn sample(t: &DegreeType, prime: PrimeField, seed: u64) -> Self {
        Self::sample_with(t, prime, seed, 0)
    }

    pub fn sample_with(t: &DegreeType, prime: PrimeField, seed: u64, resample_count: u32) -> Self {
        let mut rng = stream(seed, resample_count);
        let forms = t
            .degrees()
            .iter()
            .map(|&d| sample_form(prime, t.n(), d, &mut rng))
            .collect();
        Self {
            degree_type: t.clone(),
            prime,
            seed,
            resample_count,
            forms,
        }
    }

    /// An instance with hand-picked forms, for degenerate test cases. The
    /// forms must match the type's degrees in order.
    pub fn from_forms(
        t: &DegreeType,
        prime: PrimeField,
        seed: u64,
        forms: Vec<Polynomial>,
    ) -> Result<Self> {
        let degrees: Vec<Option<u32>> = forms.iter().map(Polynomial::degree).collect();
        let expected: Vec<Option<u32>> = t.degrees().iter().map(|&d| Some(d)).collect();
        if degrees != expected {
            return Err(Error::Precondition(format!(
                "form degrees {degrees:?} do not match type {t}"
            )));
        }
        for f in &forms {
            if f.nvars() != t.n() {
                return Err(Error::DimensionMismatch {
                    left: t.n(),
                    right: f.nvars(),
                });
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(Self {
            degree_type: t.clone(),
            prime,
            seed,
            resample_count: 0,
            forms,
        })
    }

    /// The next sample in the same seed's sequence.
    pub fn resampled(&self) -> Self {
        Self::sample_with(
            &self.degree_type,
            self.prime,
            self.seed,
            self.resample_count + 1,
        )
    }

    pub fn groebner(&self, cap: u32) -> Result<GroebnerBasis> {
        groebner(self.prime, &self.forms, cap)
    }
}

/// How much is known about the behaviour being checked for a type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    KnownProven,
    CoveredByPaper,
    Open,
}

impl Regime {
    pub fn is_proven(self) -> bool {
        self != Regime::Open
    }
}

/// Status of the ceiling-series Hilbert function for a type: known for
/// `r <= n` and `n <= 3`, covered by the inductive argument when condition
/// (1) holds, and otherwise known only for quadrics with `n <= 11` and
/// cubics with `n <= 8`.
pub fn hilbert_regime(t: &DegreeType) -> Regime {
    let (n, d) = (t.n(), t.degrees());
    let all = |v: u32| d.iter().all(|&x| x == v);
    if t.r() <= n || n <= 3 {
        Regime::KnownProven
    } else if condition1_check(t).holds {
        Regime::CoveredByPaper
    } else if (all(2) && n <= 11) || (all(3) && n <= 8) {
        Regime::KnownProven
    } else {
        Regime::Open
    }
}

/// The first degree where a computed Hilbert function leaves the expected
/// series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub degree: usize,
    pub expected: i64,
    pub found: i64,
}

pub fn first_divergence(hilbert: &[u64], expected: &TruncatedSeries) -> Option<Divergence> {
    hilbert.iter().enumerate().find_map(|(t, &found)| {
        let expected = i64::try_from(expected.coeff(t)).unwrap_or(i64::MAX);
        (expected != found as i64).then_some(Divergence {
            degree: t,
            expected,
            found: found as i64,
        })
    })
}

/// An instance that went through the guard, with the data computed on the
/// way.
#[derive(Clone, Debug)]
pub struct Guarded {
    pub instance: GenericInstance,
    pub basis: GroebnerBasis,
    pub initial: MonomialIdeal,
    pub hilbert: Vec<u64>,
    pub regime: Regime,
    /// Set only in open regimes, where a mismatch is a finding.
    pub divergence: Option<Divergence>,
}

/// Computes the Hilbert function of `inst` through `through_degree` and
/// compares it with `expected`. In a proven regime a mismatch means the
/// sample is not generic, so it is replaced by the next resample; after
/// [`RETRY_CAP`] samples the guard fails. In an open regime the mismatch is
/// returned as a finding.
pub fn genericity_guard(
    inst: GenericInstance,
    expected: &TruncatedSeries,
    through_degree: usize,
) -> Result<Guarded> {
    let regime = hilbert_regime(&inst.degree_type);
    let cap = u32::try_from(through_degree).expect("degree fits u32");
    let mut inst = inst;
    let mut attempts = 0;
    loop {
        attempts += 1;
        let basis = inst.groebner(cap)?;
        let initial = basis.initial_ideal();
        let hilbert = initial.hilbert_function_upto(cap);
        let divergence = first_divergence(&hilbert, expected);
        match divergence {
            Some(div) if regime.is_proven() => {
                if attempts >= RETRY_CAP {
                    return Err(Error::GuardExhausted {
                        attempts,
                        degree: div.degree,
                        expected: div.expected,
                        found: div.found,
                    });
                }
                inst = inst.resampled();
            }
            _ => {
                return Ok(Guarded {
                    instance: inst,
                    basis,
                    initial,
                    hilbert,
                    regime,
                    divergence,
                })
            }
        }
    }
}
