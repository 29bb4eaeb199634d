//! Predicate checkers: property P (Pardue's Conjecture E), almost
//! reverse lexicographic initial ideals (Moreno-Socías), semi-regularity of
//! `x_n, ..., x_1` (Pardue's Conjecture C) and the ceiling Hilbert series
//! (Fröberg).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    groebner, monomials_of_degree, Monomial, MonomialIdeal, Polynomial, PrimeField,
};
use crate::error::{Error, Result};
use crate::generic::{first_divergence, genericity_guard, GenericInstance, Guarded, Regime};
use crate::series::{
    ci_series, condition1_check, froberg_series, sigma_profile, DegreeType, TruncatedSeries,
};
use crate::structure::{check_structure_b, run_incremental, StandardMonomialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    Froberg,
    PardueE,
    PardueC,
    Moreno,
    StructureB,
    StructureF,
}

impl Conjecture {
    pub const ALL: [Conjecture; 6] = [
        Conjecture::Froberg,
        Conjecture::PardueE,
        Conjecture::PardueC,
        Conjecture::Moreno,
        Conjecture::StructureB,
        Conjecture::StructureF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Froberg => "froberg",
            Conjecture::PardueE => "pardue-e",
            Conjecture::PardueC => "pardue-c",
            Conjecture::Moreno => "moreno",
            Conjecture::StructureB => "structure-b",
            Conjecture::StructureF => "structure-f",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown conjecture '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    /// The predicate does not apply to this type; see the witnesses.
    OutOfRegime,
}

/// Evidence attached to a report. Monomial witnesses can be re-checked
/// against the ideal alone with [`witness_reproduces`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `generator` is a minimal generator and `missing`, which the predicate
    /// requires to lie in the ideal, does not.
    PropertyP {
        generator: Monomial,
        missing: Monomial,
    },
    AlmostRevlex {
        generator: Monomial,
        missing: Monomial,
    },
    /// A Hilbert function value off the expected series. `quotient` is the
    /// number of trailing variables set to zero, when relevant.
    Degree {
        quotient: Option<usize>,
        degree: usize,
        expected: i64,
        found: i64,
    },
    Structure {
        clause: String,
        grade: usize,
    },
    Note {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    #[serde(rename = "type")]
    pub degree_type: DegreeType,
    pub prime: PrimeField,
    pub seed: u64,
    pub resample_count: u32,
    pub verdict: Verdict,
    pub regime: Regime,
    pub witnesses: Vec<Witness>,
    pub hf_computed: Vec<u64>,
    pub hf_expected: Vec<i64>,
}

/// 1-based index of the last variable dividing `m`.
pub fn max_index(m: &Monomial) -> Result<usize> {
    m.last_var().map(|i| i + 1).ok_or(Error::UnitMonomial)
}

/// Every minimal generator `x^mu` with `m = max(x^mu)` must have all
/// monomials of its degree in `x_1..x_{m-1}` inside the ideal.
pub fn property_p_violations(ideal: &MonomialIdeal) -> Vec<Witness> {
    let n = ideal.nvars();
    let mut out = Vec::new();
    for g in ideal.generators() {
        let Ok(m) = max_index(g) else { continue };
        if m < 2 {
            continue;
        }
        for c in monomials_of_degree(m - 1, g.degree()) {
            let c = c.with_nvars(n).expect("growing is total");
            if !ideal.contains(&c) {
                out.push(Witness::PropertyP {
                    generator: *g,
                    missing: c,
                });
                break;
            }
        }
    }
    out
}

/// Every monomial of the same degree and larger than a minimal generator
/// must lie in the ideal.
pub fn almost_revlex_violations(ideal: &MonomialIdeal) -> Vec<Witness> {
    let mut out = Vec::new();
    for g in ideal.generators() {
        let missing = monomials_of_degree(ideal.nvars(), g.degree())
            .into_iter()
            .take_while(|c| c > g)
            .find(|c| !ideal.contains(c));
        if let Some(missing) = missing {
            out.push(Witness::AlmostRevlex {
                generator: *g,
                missing,
            });
        }
    }
    out
}

/// Re-tests a monomial witness in isolation. Other witness kinds carry
/// numbers that need the instance and return `true`.
pub fn witness_reproduces(ideal: &MonomialIdeal, w: &Witness) -> bool {
    match w {
        Witness::PropertyP { generator, missing } => {
            let Ok(m) = max_index(generator) else {
                return false;
            };
            ideal.is_minimal_generator(generator)
                && missing.degree() == generator.degree()
                && missing.last_var().is_some_and(|v| v + 1 < m)
                && !ideal.contains(missing)
        }
        Witness::AlmostRevlex { generator, missing } => {
            ideal.is_minimal_generator(generator)
                && missing.degree() == generator.degree()
                && missing > generator
                && !ideal.contains(missing)
        }
        _ => true,
    }
}

/// Per-quotient comparison for the semi-regular check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientComparison {
    /// Number of trailing variables set to zero.
    pub s: usize,
    pub computed: Vec<u64>,
    pub expected: Vec<i64>,
    /// Result of the direct Gröbner basis route, when requested.
    pub direct_agrees: Option<bool>,
}

/// For `s = 1..n`, compares `HS(A / (x_n, ..., x_{n-s+1}))` with
/// `ceil((1 - z)^s HS_A)` through `bound`, where `A = R / I` and
/// `initial = in(I)`. The quotients come from projecting `in(I)`; with
/// `forms` given they are also computed from a Gröbner basis of the forms
/// with the variables set to zero.
pub fn check_semi_regular_variables(
    field: PrimeField,
    initial: &MonomialIdeal,
    forms: Option<&[Polynomial]>,
    bound: usize,
) -> Result<(Vec<Witness>, Vec<QuotientComparison>)> {
    let n = initial.nvars();
    let hs_a = initial.hilbert_series(bound);
    let mut witnesses = Vec::new();
    let mut comparisons = Vec::new();
    let mut shifted = hs_a;
    for s in 1..=n {
        shifted = shifted.times_one_minus_z();
        let expected = shifted.ceiling();
        let keep = n - s;
        let quotient = initial.project(keep);
        let computed = quotient.hilbert_function_upto(bound as u32);
        let direct_agrees = match forms {
            Some(forms) => {
                let projected: Vec<Polynomial> = forms
                    .iter()
                    .map(|f| f.project(keep))
                    .filter(|f| !f.is_zero())
                    .collect();
                let direct = if projected.is_empty() {
                    MonomialIdeal::zero(keep)
                } else {
                    groebner(field, &projected, bound as u32)?.initial_ideal()
                };
                Some(direct.hilbert_function_upto(bound as u32) == computed)
            }
            None => None,
        };
        if let Some(div) = first_divergence(&computed, &expected) {
            witnesses.push(Witness::Degree {
                quotient: Some(s),
                degree: div.degree,
                expected: div.expected,
                found: div.found,
            });
        }
        if direct_agrees == Some(false) {
            witnesses.push(Witness::Note {
                message: format!("projection and direct basis disagree for s = {s}"),
            });
        }
        comparisons.push(QuotientComparison {
            s,
            computed,
            expected: series_i64(&expected),
            direct_agrees,
        });
    }
    Ok((witnesses, comparisons))
}

/// `f_1, ..., f_r` is a regular sequence on the full ring iff
/// `HS(R / (f)) = prod (1 - z^{d_i}) / (1 - z)^n` with no ceiling. Checked
/// degreewise through `bound`.
pub fn check_regular_sequence(
    field: PrimeField,
    nvars: usize,
    forms: &[Polynomial],
    bound: usize,
) -> Result<bool> {
    if forms.is_empty() {
        return Ok(true);
    }
    if forms.len() > nvars {
        return Err(Error::Precondition(format!(
            "{} forms cannot be regular in {nvars} variables",
            forms.len()
        )));
    }
    let mut expected = TruncatedSeries::one(bound);
    for f in forms {
        let d = f.degree().expect("nonzero") as usize;
        expected = expected.mul_truncated(&TruncatedSeries::one_minus_power(d, bound))?;
    }
    for _ in 0..nvars {
        expected = expected.divide_by_one_minus_z();
    }
    let initial = groebner(field, forms, bound as u32)?.initial_ideal();
    let hf = initial.hilbert_function_upto(bound as u32);
    Ok(first_divergence(&hf, &expected).is_none())
}

fn series_i64(s: &TruncatedSeries) -> Vec<i64> {
    s.coeffs()
        .iter()
        .map(|c| i64::try_from(c).unwrap_or(i64::MAX))
        .collect()
}

/// Socle degree of the ceiling series plus one, when the series is finite.
pub fn default_check_bound(t: &DegreeType) -> Result<usize> {
    if t.r() < t.n() {
        return Err(Error::Precondition(format!(
            "type {t} has r < n, so its Hilbert series never vanishes; pass an explicit bound"
        )));
    }
    let s = froberg_series(t, t.default_bound());
    Ok(s.last_nonzero().map_or(0, |k| k + 1))
}

/// Regime of property P and the equivalent semi-regularity statement:
/// known for `n <= 2`, `CoveredByPaper` for `n = 3` and under
/// condition (1), and known wherever the almost-revlex property is.
pub fn pardue_regime(t: &DegreeType) -> Regime {
    if t.n() <= 2 {
        Regime::KnownProven
    } else if t.n() == 3 || condition1_check(t).holds {
        Regime::CoveredByPaper
    } else if moreno_regime(t) == Regime::KnownProven {
        Regime::KnownProven
    } else {
        Regime::Open
    }
}

/// Regime of the almost-revlex property: known for `n <= 4` and when
/// `d_i >= d_1 + ... + d_{i-1} - i - 1` for every `i`.
pub fn moreno_regime(t: &DegreeType) -> Regime {
    let d = t.degrees();
    let capaverde_gao = (1..d.len()).all(|k| {
        let prior: i64 = d[..k].iter().map(|&x| i64::from(x)).sum();
        i64::from(d[k]) >= prior - (k as i64 + 1) - 1
    });
    if t.n() <= 4 || capaverde_gao {
        Regime::KnownProven
    } else {
        Regime::Open
    }
}

fn verdict_of(witnesses: &[Witness]) -> Verdict {
    if witnesses.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn guarded_square(t: &DegreeType, prime: PrimeField, seed: u64, bound: usize) -> Result<Guarded> {
    let expected = ci_series(t)?.with_bound(bound);
    genericity_guard(GenericInstance::sample(t, prime, seed), &expected, bound)
}

fn out_of_regime(
    conjecture: Conjecture,
    t: &DegreeType,
    prime: PrimeField,
    seed: u64,
    message: String,
) -> ConjectureReport {
    ConjectureReport {
        conjecture,
        degree_type: t.clone(),
        prime,
        seed,
        resample_count: 0,
        verdict: Verdict::OutOfRegime,
        regime: Regime::Open,
        witnesses: vec![Witness::Note { message }],
        hf_computed: Vec::new(),
        hf_expected: Vec::new(),
    }
}

/// Samples a guarded instance and compares its Hilbert function with the
/// ceiling series through `bound`. With `verify` and `r > n`, the series is
/// also obtained from a complete intersection in `r` variables by setting
/// the last `r - n` variables to zero.
pub fn check_froberg(
    t: &DegreeType,
    prime: PrimeField,
    seed: u64,
    bound: Option<usize>,
    verify: bool,
) -> Result<ConjectureReport> {
    let bound = match bound {
        Some(b) => b,
        None => default_check_bound(t)?,
    };
    let expected = froberg_series(t, bound);
    let guarded = genericity_guard(GenericInstance::sample(t, prime, seed), &expected, bound)?;
    let mut witnesses: Vec<Witness> = guarded
        .divergence
        .iter()
        .map(|div| Witness::Degree {
            quotient: None,
            degree: div.degree,
            expected: div.expected,
            found: div.found,
        })
        .collect();
    if verify && t.r() > t.n() {
        let lifted = DegreeType::new(t.r(), t.degrees().to_vec())?;
        let ci = guarded_square(&lifted, prime, seed, bound)?;
        let projected = ci.initial.project(t.n());
        let hf = projected.hilbert_function_upto(bound as u32);
        if let Some(div) = first_divergence(&hf, &expected) {
            witnesses.push(Witness::Degree {
                quotient: Some(t.r() - t.n()),
                degree: div.degree,
                expected: div.expected,
                found: div.found,
            });
        }
    }
    Ok(ConjectureReport {
        conjecture: Conjecture::Froberg,
        degree_type: t.clone(),
        prime,
        seed,
        resample_count: guarded.instance.resample_count,
        verdict: verdict_of(&witnesses),
        regime: guarded.regime,
        witnesses,
        hf_computed: guarded.hilbert,
        hf_expected: series_i64(&expected),
    })
}

/// Runs one check on one seed.
pub fn run_check(
    conjecture: Conjecture,
    t: &DegreeType,
    prime: PrimeField,
    seed: u64,
    bound: Option<usize>,
    verify: bool,
) -> Result<ConjectureReport> {
    if conjecture == Conjecture::Froberg {
        return check_froberg(t, prime, seed, bound, verify);
    }
    if conjecture == Conjecture::StructureF {
        return check_structure_f(t, prime, seed);
    }
    if t.r() != t.n() {
        return Ok(out_of_regime(
            conjecture,
            t,
            prime,
            seed,
            format!("{conjecture} concerns types with r = n, got {t}"),
        ));
    }
    let bound = match bound {
        Some(b) => b,
        None => default_check_bound(t)?,
    };
    let guarded = guarded_square(t, prime, seed, bound)?;
    let expected = series_i64(&ci_series(t)?.with_bound(bound));
    let (witnesses, regime) = match conjecture {
        Conjecture::PardueE => (property_p_violations(&guarded.initial), pardue_regime(t)),
        Conjecture::Moreno => (almost_revlex_violations(&guarded.initial), moreno_regime(t)),
        Conjecture::PardueC => {
            let forms = verify.then_some(guarded.instance.forms.as_slice());
            let (w, _) = check_semi_regular_variables(prime, &guarded.initial, forms, bound)?;
            (w, pardue_regime(t))
        }
        Conjecture::StructureB => {
            let delta = sigma_profile(t).top_delta().max(0) as usize;
            let b = StandardMonomialSet::from_ideal(&guarded.initial, delta.max(bound));
            let report = check_structure_b(&b, t)?;
            let w = report
                .violations
                .iter()
                .map(|v| Witness::Structure {
                    clause: format!("({})", v.clause),
                    grade: v.grade,
                })
                .collect();
            (w, Regime::CoveredByPaper)
        }
        Conjecture::Froberg | Conjecture::StructureF => unreachable!(),
    };
    Ok(ConjectureReport {
        conjecture,
        degree_type: t.clone(),
        prime,
        seed,
        resample_count: guarded.instance.resample_count,
        verdict: verdict_of(&witnesses),
        regime,
        witnesses,
        hf_computed: guarded.hilbert,
        hf_expected: expected,
    })
}

/// Incremental construction against a direct basis for a type
/// `(n+1; d_1..d_n, d)`.
fn check_structure_f(t: &DegreeType, prime: PrimeField, seed: u64) -> Result<ConjectureReport> {
    if t.r() != t.n() || t.n() < 2 {
        return Ok(out_of_regime(
            Conjecture::StructureF,
            t,
            prime,
            seed,
            format!("structure-f needs a type (n+1; d_1..d_n, d) with n >= 1, got {t}"),
        ));
    }
    let run = run_incremental(t, prime, seed, true)?;
    let direct = run.direct.as_ref().expect("verification requested");
    let mut witnesses = Vec::new();
    if !direct.initial_matches {
        witnesses.push(Witness::Note {
            message: "assembled initial ideal differs from the direct one".into(),
        });
    }
    let computed: Vec<u64> = direct.direct_counts.iter().map(|&c| c as u64).collect();
    let predicted: Vec<i64> = match &run.f {
        Some(f) => f.counts().into_iter().map(|c| c as i64).collect(),
        None => ci_series(t)?
            .with_bound(computed.len() - 1)
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap_or(i64::MAX))
            .collect(),
    };
    if direct.f_matches == Some(false) {
        for (k, (&c, &p)) in computed.iter().zip(&predicted).enumerate() {
            if c as i64 != p {
                witnesses.push(Witness::Degree {
                    quotient: None,
                    degree: k,
                    expected: p,
                    found: c as i64,
                });
            }
        }
        if witnesses.len() == usize::from(!direct.initial_matches) {
            witnesses.push(Witness::Note {
                message: "predicted standard monomials differ from the direct ones".into(),
            });
        }
    }
    let regime = if run.i_star.is_some() {
        Regime::CoveredByPaper
    } else {
        Regime::KnownProven
    };
    Ok(ConjectureReport {
        conjecture: Conjecture::StructureF,
        degree_type: t.clone(),
        prime,
        seed,
        resample_count: run.instance.resample_count,
        verdict: verdict_of(&witnesses),
        regime,
        witnesses,
        hf_computed: computed,
        hf_expected: predicted,
    })
}
