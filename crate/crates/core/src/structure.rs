//! Standard monomial sets of generic complete intersections and the
//! incremental construction of `in(I, g)` from `in(I)`.
//!
//! Conventions: `B` lives in `K[x_1..x_n]`, while `E` (standard monomials of
//! `I`) and `F` (standard monomials of `(I, g)`) live in `K[x_1..x_n, z]` with
//! `z` the last variable. Positions inside a grade are 1-based and count
//! from the largest monomial.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    groebner, FpMatrix, GroebnerBasis, Monomial, MonomialIdeal, Polynomial, PrimeField, Reducer,
};
use crate::error::{Error, Result};
use crate::generic::{first_divergence, Divergence, GenericInstance, RETRY_CAP};
use crate::series::{ci_series, sigma_profile, DegreeType};

/// The graded pieces `B_0..B_top` of a set of monomials, each sorted
/// decreasing. Grades past `top` are empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardMonomialSet {
    nvars: usize,
    grades: Vec<Vec<Monomial>>,
}

impl StandardMonomialSet {
    pub fn from_ideal(ideal: &MonomialIdeal, top: usize) -> Self {
        let grades = (0..=top)
            .map(|t| ideal.standard_monomials(t as u32))
            .collect();
        Self {
            nvars: ideal.nvars(),
            grades,
        }
    }

    /// Sorts and deduplicates each grade.
    pub fn from_grades(nvars: usize, grades: Vec<Vec<Monomial>>) -> Self {
        let grades = grades
            .into_iter()
            .map(|mut g| {
                g.sort_unstable_by(|a, b| b.cmp(a));
                g.dedup();
                g
            })
            .collect();
        Self { nvars, grades }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn top(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn grade(&self, i: usize) -> &[Monomial] {
        self.grades.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, i: usize) -> usize {
        self.grade(i).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.grades.iter().map(Vec::len).collect()
    }

    /// Total number of monomials, i.e. the vector-space dimension when the
    /// set is finite and fully listed.
    pub fn total(&self) -> usize {
        self.grades.iter().map(Vec::len).sum()
    }
}

/// The members of each grade free of the last variable. Grade 0 holds `{1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeDecomposition {
    pub tilde0: Vec<Vec<Monomial>>,
}

impl TildeDecomposition {
    pub fn counts(&self) -> Vec<usize> {
        self.tilde0.iter().map(Vec::len).collect()
    }
}

pub fn tilde_decompose(b: &StandardMonomialSet) -> TildeDecomposition {
    let last = b.nvars() - 1;
    let tilde0 = b
        .grades
        .iter()
        .enumerate()
        .map(|(i, grade)| {
            if i == 0 {
                return vec![Monomial::one(b.nvars())];
            }
            grade
                .iter()
                .filter(|m| m.exponent(last) == 0)
                .copied()
                .collect()
        })
        .collect();
    TildeDecomposition { tilde0 }
}

fn times_var(ms: &[Monomial], var: usize, e: u32) -> Vec<Monomial> {
    ms.iter().map(|m| m.times_var_pow(var, e)).collect()
}

fn lift(ms: &[Monomial], nvars: usize) -> Vec<Monomial> {
    ms.iter()
        .map(|m| m.with_nvars(nvars).expect("growing is total"))
        .collect()
}

fn sorted_desc(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_unstable_by(|a, b| b.cmp(a));
    ms
}

/// A failed clause of the three-part structure of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureViolation {
    pub clause: u8,
    pub grade: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureBReport {
    pub delta: i64,
    pub sigma: Option<i64>,
    /// Set for `n = 1`, where `sigma` is undefined and nothing is checked.
    pub skipped: bool,
    pub violations: Vec<StructureViolation>,
}

impl StructureBReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, with `x_n` the last variable:
/// (1) `B_i = B~_i ∪ x_n B_{i-1}` for `1 <= i <= sigma`;
/// (2) `B_{sigma+i} = x_n^i B_sigma` for `0 <= i <= delta - 2 sigma`;
/// (3) `B_{delta-i} = x_n^{delta-2i} B_i` for `0 <= i <= sigma`.
/// `b` must list grades through `delta`.
pub fn check_structure_b(b: &StandardMonomialSet, t: &DegreeType) -> Result<StructureBReport> {
    if t.r() != t.n() {
        return Err(Error::NotSquare { n: t.n(), r: t.r() });
    }
    if b.nvars() != t.n() {
        return Err(Error::DimensionMismatch {
            left: t.n(),
            right: b.nvars(),
        });
    }
    let profile = sigma_profile(t);
    let delta = profile.top_delta();
    let Some(sigma) = profile.top_sigma() else {
        return Ok(StructureBReport {
            delta,
            sigma: None,
            skipped: true,
            violations: Vec::new(),
        });
    };
    if (b.top() as i64) < delta {
        return Err(Error::Precondition(format!(
            "standard monomials listed through degree {}, need {delta}",
            b.top()
        )));
    }
    let (delta, sigma_u) = (delta as usize, sigma as usize);
    let xn = t.n() - 1;
    let tilde = tilde_decompose(b);
    let mut violations = Vec::new();
    let mut record = |clause, grade, ok: bool| {
        if !ok {
            violations.push(StructureViolation { clause, grade });
        }
    };

    for i in 1..=sigma_u {
        let mut expected = tilde.tilde0[i].clone();
        expected.extend(times_var(b.grade(i - 1), xn, 1));
        record(1, i, sorted_desc(expected) == b.grade(i));
    }
    for i in 0..=delta - 2 * sigma_u {
        let expected = times_var(b.grade(sigma_u), xn, i as u32);
        record(2, sigma_u + i, expected == b.grade(sigma_u + i));
    }
    for i in 0..=sigma_u {
        let expected = times_var(b.grade(i), xn, (delta - 2 * i) as u32);
        record(3, delta - i, expected == b.grade(delta - i));
    }
    Ok(StructureBReport {
        delta: delta as i64,
        sigma: Some(sigma),
        skipped: false,
        violations,
    })
}

/// Grades of `E` where `E_i = ∪_{j<=i} z^j B_{i-j}` (for `i <= delta`) or
/// `E_i = z^{i-delta} E_delta` (above) fails.
pub fn check_e_grades(
    e: &StandardMonomialSet,
    b: &StandardMonomialSet,
    delta: usize,
) -> Vec<usize> {
    let z = b.nvars();
    (0..=e.top())
        .filter(|&i| {
            let expected = if i <= delta {
                (0..=i)
                    .flat_map(|j| times_var(&lift(b.grade(i - j), z + 1), z, j as u32))
                    .collect::<Vec<_>>()
            } else {
                times_var(e.grade(delta), z, (i - delta) as u32)
            };
            expected != e.grade(i)
        })
        .collect()
}

/// The matrix `M_i`: row `k` holds the coefficients of the normal form of
/// `E_i[k] * g` against the monomials of `E_{i+d}`.
pub fn build_matrix(
    i: usize,
    g: &Polynomial,
    reducer: &mut Reducer,
    e: &StandardMonomialSet,
) -> Result<FpMatrix> {
    let d = g
        .degree()
        .ok_or_else(|| Error::Precondition("g is zero".into()))? as usize;
    let cols = e.grade(i + d);
    let rows = e
        .grade(i)
        .iter()
        .map(|m| {
            let (_, dense) = reducer.normal_form_dense(m, g)?;
            Ok(cols.iter().map(|c| dense[reducer.rank_of(c)]).collect())
        })
        .collect::<Result<Vec<Vec<u32>>>>()?;
    Ok(FpMatrix::from_rows(reducer.field(), cols.len(), rows))
}

/// 0-based indices of the first `target_rank` linearly independent columns,
/// scanning left to right.
pub fn first_independent_columns(m: &FpMatrix, target_rank: usize) -> Result<Vec<usize>> {
    let cols = m.pivot_columns_upto(target_rank);
    if cols.len() < target_rank {
        return Err(Error::RankDeficient {
            achieved: cols.len(),
            target: target_rank,
        });
    }
    Ok(cols)
}

/// `S_i`: 1-based positions inside the leading `B_{d+i}` block of the
/// first `a_i` independent columns of `M_i`.
pub fn extract_s(step: usize, kept: &[usize], a_i: usize, a_di: usize) -> Result<Vec<usize>> {
    let leading = &kept[..a_i.min(kept.len())];
    let inside = leading.iter().filter(|&&c| c < a_di).count();
    if inside < a_i {
        return Err(Error::ColumnsOutsideBlock {
            step: step as u32,
            found: inside,
            expected: a_i,
            block: a_di,
        });
    }
    Ok(leading.iter().map(|&c| c + 1).collect())
}

/// `i* = floor((delta - d) / 2)` when `d < delta`.
pub fn i_star(delta: usize, d: usize) -> Option<usize> {
    (d < delta).then(|| (delta - d) / 2)
}

/// Families of monomials whose union with `in(I)` generates `in(I, g)`,
/// each labelled for display. Not minimalized.
pub fn assembly_families(
    b: &StandardMonomialSet,
    s: &[Vec<usize>],
    d: usize,
    delta: usize,
) -> Result<Vec<(String, Vec<Monomial>)>> {
    let n = b.nvars();
    let z = n;
    let up = |i: usize| lift(b.grade(i), n + 1);
    let zb = |k: usize, i: usize| times_var(&up(i), z, k as u32);
    let mut out = Vec::new();
    let Some(istar) = i_star(delta, d) else {
        for k in 0..=delta {
            out.push((
                format!("z^{} B_{}", d - delta + 2 * k, delta - k),
                zb(d - delta + 2 * k, delta - k),
            ));
        }
        return Ok(out);
    };
    if s.len() != istar {
        return Err(Error::Precondition(format!(
            "expected {istar} column sets, got {}",
            s.len()
        )));
    }
    let largest = up(d).first().copied().into_iter().collect();
    out.push((format!("B_{d}^{{1}}"), largest));
    for (k, si) in s.iter().enumerate() {
        let i = k + 1;
        let grade = up(d + i);
        let picked =
            si.iter()
                .map(|&p| {
                    grade.get(p - 1).copied().ok_or_else(|| {
                        Error::Precondition(format!("position {p} outside B_{}", d + i))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
        out.push((format!("B_{}^S_{i}", d + i), picked));
    }
    if (delta - d).is_multiple_of(2) {
        for k in 1..=istar + d {
            out.push((
                format!("z^{} B_{}", 2 * k, d + istar - k),
                zb(2 * k, d + istar - k),
            ));
        }
    } else {
        out.push((format!("B_{}", d + istar + 1), up(d + istar + 1)));
        for k in 0..=istar + d {
            out.push((
                format!("z^{} B_{}", 2 * k + 1, d + istar - k),
                zb(2 * k + 1, d + istar - k),
            ));
        }
    }
    Ok(out)
}

/// `in(I, g)` from `in(I)` (in `n + 1` variables), `B` and the column sets,
/// minimalized.
pub fn assemble_initial(
    in_i: &MonomialIdeal,
    b: &StandardMonomialSet,
    s: &[Vec<usize>],
    d: usize,
    delta: usize,
) -> Result<MonomialIdeal> {
    if in_i.nvars() != b.nvars() + 1 {
        return Err(Error::DimensionMismatch {
            left: b.nvars() + 1,
            right: in_i.nvars(),
        });
    }
    let families = assembly_families(b, s, d, delta)?;
    Ok(in_i.with_generators(families.into_iter().flat_map(|(_, ms)| ms)))
}

/// Standard monomials `F` of `(I, g)`, grade by grade through `delta + d`
/// (that grade and beyond are empty). Requires `d < delta`.
pub fn build_f(
    b: &StandardMonomialSet,
    s: &[Vec<usize>],
    d: usize,
    delta: usize,
) -> Result<StandardMonomialSet> {
    let istar = i_star(delta, d).ok_or_else(|| {
        Error::Precondition(format!("need d < delta, got d = {d}, delta = {delta}"))
    })?;
    if s.len() != istar {
        return Err(Error::Precondition(format!(
            "expected {istar} column sets, got {}",
            s.len()
        )));
    }
    let n = b.nvars();
    let z = n;
    let even = (delta - d).is_multiple_of(2);
    let up = |i: usize| lift(b.grade(i), n + 1);
    let without = |grade: Vec<Monomial>, drop: &[usize]| -> Vec<Monomial> {
        grade
            .into_iter()
            .enumerate()
            .filter(|(k, _)| !drop.contains(&(k + 1)))
            .map(|(_, m)| m)
            .collect()
    };
    let last_s = if even { istar.saturating_sub(1) } else { istar };

    let mut f: Vec<Vec<Monomial>> = Vec::with_capacity(delta + d + 1);
    for k in 0..delta + d {
        let grade = if k < d {
            let mut g = up(k);
            if k > 0 {
                g.extend(times_var(&f[k - 1], z, 1));
            }
            g
        } else if k == d {
            let mut g = without(up(d), &[1]);
            if k > 0 {
                g.extend(times_var(&f[k - 1], z, 1));
            }
            g
        } else if k - d <= last_s {
            let mut g = without(up(k), &s[k - d - 1]);
            g.extend(times_var(&f[k - 1], z, 1));
            g
        } else {
            let m = if even {
                2 * (d + istar) - 1 - k
            } else {
                2 * (d + istar) - k
            };
            times_var(&f[m], z, (k - m) as u32)
        };
        f.push(sorted_desc(grade));
    }
    f.push(Vec::new());
    Ok(StandardMonomialSet::from_grades(n + 1, f))
}

/// A failed instance of `B_{d+i} = x_n^{i-j} (a_{d+i} smallest of B_{d+j})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipleViolation {
    pub i: usize,
    pub j: usize,
}

/// Checks every pair `i > j >= i*` with `d + j <= delta`.
pub fn verify_lemma_multiple(
    b: &StandardMonomialSet,
    d: usize,
    delta: usize,
) -> Result<Vec<MultipleViolation>> {
    let istar = i_star(delta, d).ok_or_else(|| {
        Error::Precondition(format!("need d < delta, got d = {d}, delta = {delta}"))
    })?;
    let xn = b.nvars() - 1;
    let mut out = Vec::new();
    for j in istar..=delta - d {
        for i in j + 1..=delta - d + 1 {
            let (big, small) = (b.grade(d + i), b.grade(d + j));
            let ok = big.len() <= small.len()
                && times_var(&small[small.len() - big.len()..], xn, (i - j) as u32) == big;
            if !ok {
                out.push(MultipleViolation { i, j });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedMonomial {
    pub monomial: Monomial,
    /// 1-based position within the `B_{d+i}` block.
    pub position: usize,
    /// Not a minimal generator of the assembled `in(I, g)`.
    pub redundant: bool,
}

/// One step of the incremental method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncrementalStep {
    pub step: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// 1-based positions in `E_{i+d}` of the first independent columns.
    pub kept_columns: Vec<usize>,
    /// `S_i`, absent for step 0.
    pub s: Option<Vec<usize>>,
    pub added: Vec<AddedMonomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Even,
    Odd,
    /// `d >= delta`: the closed form, no matrices.
    Closed,
}

/// Comparison of the assembled answer with a direct Gröbner basis of
/// `(I, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectCheck {
    pub initial_matches: bool,
    pub f_matches: Option<bool>,
    pub direct_generators: usize,
    pub direct_counts: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IncrementalRun {
    pub instance: GenericInstance,
    pub n: usize,
    pub d: usize,
    pub delta: usize,
    pub sigma: Option<i64>,
    pub i_star: Option<usize>,
    pub branch: Branch,
    pub b: StandardMonomialSet,
    pub in_j: MonomialIdeal,
    pub steps: Vec<IncrementalStep>,
    pub s: Vec<Vec<usize>>,
    pub assembled: MonomialIdeal,
    pub f: Option<StandardMonomialSet>,
    pub direct: Option<DirectCheck>,
}

impl IncrementalRun {
    pub fn f_counts(&self) -> Option<Vec<usize>> {
        self.f.as_ref().map(StandardMonomialSet::counts)
    }
}

struct Prepared {
    instance: GenericInstance,
    in_j: MonomialIdeal,
    b: StandardMonomialSet,
    basis_i: GroebnerBasis,
    g: Polynomial,
}

/// Samples `(I, g)` of type `(n+1; d_1..d_n, d)` and checks the generic
/// facts the construction relies on: `HF(R/J)` is the complete
/// intersection series, `in(I)` and `in(J)` agree below the cap, and `g`
/// reduced modulo `I` involves every standard monomial of degree `d`.
/// Failing samples are resampled.
fn prepare(t: &DegreeType, prime: PrimeField, seed: u64, cap_i: u32) -> Result<Prepared> {
    let n = t.n() - 1;
    let t_j = t.truncate_last()?;
    let delta = sigma_profile(&t_j).top_delta() as usize;
    let expected = ci_series(&t_j)?.with_bound(delta + 1);
    let mut instance = GenericInstance::sample(t, prime, seed);
    let mut last = None;
    for _ in 0..RETRY_CAP {
        let forms_j: Vec<Polynomial> = instance.forms[..n].iter().map(|f| f.project(n)).collect();
        let basis_j = groebner(prime, &forms_j, (delta + 1) as u32)?;
        let in_j = basis_j.initial_ideal();
        let hf = in_j.hilbert_function_upto((delta + 1) as u32);
        if let Some(div) = first_divergence(&hf, &expected) {
            last = Some(div);
            instance = instance.resampled();
            continue;
        }
        let basis_i = groebner(prime, &instance.forms[..n], cap_i)?;
        let in_i_embedded = in_j.embed(n + 1);
        if basis_i.initial_ideal() != in_i_embedded.truncated(cap_i) {
            instance = instance.resampled();
            continue;
        }
        let g = basis_i.normal_form(&instance.forms[n])?;
        let d = t.degrees()[n];
        let e_d = in_i_embedded.standard_monomials(d);
        if g.len() != e_d.len() {
            instance = instance.resampled();
            continue;
        }
        let b = StandardMonomialSet::from_ideal(&in_j, delta + 1);
        return Ok(Prepared {
            instance,
            in_j,
            b,
            basis_i,
            g,
        });
    }
    let div = last.unwrap_or(Divergence {
        degree: 0,
        expected: 0,
        found: 0,
    });
    Err(Error::GuardExhausted {
        attempts: RETRY_CAP,
        degree: div.degree,
        expected: div.expected,
        found: div.found,
    })
}

/// Runs the incremental method on a sampled instance of type
/// `(n+1; d_1..d_n, d)`, where `d` is the largest degree. With `verify`,
/// also computes `in(I, g)` directly and compares.
pub fn run_incremental(
    t: &DegreeType,
    prime: PrimeField,
    seed: u64,
    verify: bool,
) -> Result<IncrementalRun> {
    if t.r() != t.n() || t.n() < 2 {
        return Err(Error::Precondition(format!(
            "the incremental method needs a type (n+1; d_1..d_n, d) with n >= 1, got {t}"
        )));
    }
    let n = t.n() - 1;
    let d = t.degrees()[n] as usize;
    let t_j = t.truncate_last()?;
    let profile = sigma_profile(&t_j);
    let delta = profile.top_delta() as usize;
    let istar = i_star(delta, d);
    let cap_i = (d + istar.unwrap_or(0)) as u32;

    let prep = prepare(t, prime, seed, cap_i)?;
    let in_i = prep.in_j.embed(n + 1);
    let mut steps = Vec::new();
    let mut s = Vec::new();

    let branch = match istar {
        None => Branch::Closed,
        Some(_) if (delta - d).is_multiple_of(2) => Branch::Even,
        Some(_) => Branch::Odd,
    };

    if let Some(istar) = istar {
        let e = StandardMonomialSet::from_ideal(&in_i, d + istar);
        let mut reducer = prep.basis_i.reducer();
        for i in 0..=istar {
            let m = build_matrix(i, &prep.g, &mut reducer, &e)?;
            let kept = first_independent_columns(&m, m.rows())?;
            let step_s = if i == 0 {
                if kept.first() != Some(&0) {
                    return Err(Error::ColumnsOutsideBlock {
                        step: 0,
                        found: 0,
                        expected: 1,
                        block: 1,
                    });
                }
                None
            } else {
                let si = extract_s(i, &kept, prep.b.count(i), prep.b.count(d + i))?;
                s.push(si.clone());
                Some(si)
            };
            steps.push(IncrementalStep {
                step: i,
                rows: m.rows(),
                cols: m.cols(),
                rank: kept.len(),
                kept_columns: kept.iter().map(|c| c + 1).collect(),
                s: step_s,
                added: Vec::new(),
            });
        }
    }

    let assembled = assemble_initial(&in_i, &prep.b, &s, d, delta)?;
    if istar.is_some() {
        for step in &mut steps {
            let grade = lift(prep.b.grade(d + step.step), n + 1);
            let positions = step.s.clone().unwrap_or_else(|| vec![1]);
            step.added = positions
                .into_iter()
                .map(|p| {
                    let monomial = grade[p - 1];
                    AddedMonomial {
                        monomial,
                        position: p,
                        redundant: !assembled.is_minimal_generator(&monomial),
                    }
                })
                .collect();
        }
    }
    let f = istar.map(|_| build_f(&prep.b, &s, d, delta)).transpose()?;

    let direct = if verify {
        let top = (delta + d) as u32;
        let basis = prep.instance.groebner(top)?;
        let direct_in = basis.initial_ideal();
        let direct_f = StandardMonomialSet::from_ideal(&direct_in, delta + d);
        Some(DirectCheck {
            initial_matches: direct_in == assembled,
            f_matches: f.as_ref().map(|f| f.grades == direct_f.grades),
            direct_generators: direct_in.generators().len(),
            direct_counts: direct_f.counts(),
        })
    } else {
        None
    };

    Ok(IncrementalRun {
        instance: prep.instance,
        n,
        d,
        delta,
        sigma: profile.top_sigma(),
        i_star: istar,
        branch,
        b: prep.b,
        in_j: prep.in_j,
        steps,
        s,
        assembled,
        f,
        direct,
    })
}
