//! End-to-end acceptance run. Each test prints one `PASS`/`FAIL` line
//! straight to stdout, so the lines show up even when output is captured.

mod common;

use std::io::Write as _;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::invariants as inv;
use common::strategies::{form, ideal_case, monomial_triple, series, square_type};
use gin_core::algebra::{groebner, Monomial, MonomialIdeal, Polynomial, PrimeField};
use gin_core::conjectures::{run_check, Conjecture, Verdict};
use gin_core::generic::GenericInstance;
use gin_core::series::{ci_series, condition1_check, sigma_profile, DegreeType};
use gin_core::structure::{
    check_structure_b, run_incremental, tilde_decompose, StandardMonomialSet,
};

const SEEDS: [u64; 3] = [0, 1, 2];

fn ty(s: &str) -> DegreeType {
    s.parse().unwrap()
}

fn m(e: &[u32]) -> Monomial {
    Monomial::new(e).unwrap()
}

/// Prints the verdict line and fails the test when any problem was found.
fn report(criterion: u32, title: &str, problems: &[String]) {
    let mut out = std::io::stdout().lock();
    if problems.is_empty() {
        writeln!(out, "PASS criterion {criterion}: {title}").unwrap();
    } else {
        writeln!(out, "FAIL criterion {criterion}: {title}").unwrap();
        for p in problems {
            writeln!(out, "     {p}").unwrap();
        }
    }
    out.flush().unwrap();
    assert!(problems.is_empty(), "criterion {criterion}: {problems:?}");
}

fn check_time(problems: &mut Vec<String>, what: &str, elapsed: Duration, limit: Duration) {
    if elapsed >= limit {
        problems.push(format!("{what} took {elapsed:?}, limit {limit:?}"));
    }
}

fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort();
    v
}

/// Grades of `B(4; 2,3,3,4)`, built from the worked example's listing.
fn example_b_grades() -> Vec<Vec<Monomial>> {
    let tilde: [Vec<Monomial>; 5] = [
        vec![m(&[0, 0, 0, 0])],
        vec![m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0]), m(&[0, 0, 1, 0])],
        vec![
            m(&[1, 1, 0, 0]),
            m(&[0, 2, 0, 0]),
            m(&[1, 0, 1, 0]),
            m(&[0, 1, 1, 0]),
            m(&[0, 0, 2, 0]),
        ],
        vec![
            m(&[1, 1, 1, 0]),
            m(&[0, 2, 1, 0]),
            m(&[1, 0, 2, 0]),
            m(&[0, 1, 2, 0]),
            m(&[0, 0, 3, 0]),
        ],
        vec![m(&[0, 1, 3, 0]), m(&[0, 0, 4, 0])],
    ];
    let x4 = |k: u32, set: &[Monomial]| -> Vec<Monomial> {
        set.iter().map(|b| b.times_var_pow(3, k)).collect()
    };
    let mut grades: Vec<Vec<Monomial>> = vec![tilde[0].clone()];
    // B_i = tilde(B_i) + x4 B_{i-1} for i <= 4
    for i in 1..=4 {
        let mut g = tilde[i].clone();
        g.extend(x4(1, &grades[i - 1]));
        grades.push(g);
    }
    // B_5 = x4^2 B_3, B_6 = x4^4 B_2, B_7 = x4^6 B_1, B_8 = x4^8 B_0
    for (i, k) in [(5usize, 2u32), (6, 4), (7, 6), (8, 8)] {
        let g = x4(k, &grades[8 - i]);
        grades.push(g);
    }
    grades.into_iter().map(sorted).collect()
}

#[test]
fn criterion_1_standard_monomials_of_4_2334() {
    let t = ty("4:2,3,3,4");
    let mut problems = Vec::new();
    let ci = ci_series(&t).unwrap().to_i64_vec();
    if ci != Some(vec![1, 4, 9, 14, 16, 14, 9, 4, 1]) {
        problems.push(format!("ci series {ci:?}"));
    }
    let expected = example_b_grades();
    for seed in SEEDS {
        let start = Instant::now();
        let r = run_check(
            Conjecture::StructureB,
            &t,
            PrimeField::default(),
            seed,
            None,
            false,
        )
        .unwrap();
        let inst = GenericInstance::sample_with(&t, r.prime, seed, r.resample_count);
        let basis = inst.groebner(9).unwrap();
        let b = StandardMonomialSet::from_ideal(&basis.initial_ideal(), 8);
        check_time(
            &mut problems,
            &format!("seed {seed}"),
            start.elapsed(),
            Duration::from_secs(5),
        );
        if b.counts() != vec![1, 4, 9, 14, 16, 14, 9, 4, 1] {
            problems.push(format!("seed {seed}: counts {:?}", b.counts()));
        }
        let tilde = tilde_decompose(&b).counts();
        if tilde[1..=4] != [3, 5, 5, 2] || tilde[5..].iter().any(|&c| c != 0) {
            problems.push(format!("seed {seed}: tilde counts {tilde:?}"));
        }
        for (i, want) in expected.iter().enumerate() {
            if sorted(b.grade(i).to_vec()) != *want {
                problems.push(format!("seed {seed}: grade {i} is {:?}", b.grade(i)));
            }
        }
        if r.verdict != Verdict::Holds {
            problems.push(format!("seed {seed}: structure check {:?}", r.witnesses));
        }
    }
    report(
        1,
        "4:2,3,3,4 series, grade counts, a' = [3,5,5,2] and grade sets",
        &problems,
    );
}

#[test]
fn criterion_2_incremental_5_23345() {
    let t = ty("5:2,3,3,4,5");
    let mut problems = Vec::new();
    // the largest monomial of B_5 = x4^2 B_3 is x4^2 times x1 x2 x3
    let largest_b5 = m(&[1, 1, 1, 2, 0]);
    for seed in SEEDS {
        let start = Instant::now();
        let run = run_incremental(&t, PrimeField::default(), seed, true).unwrap();
        check_time(
            &mut problems,
            &format!("seed {seed}"),
            start.elapsed(),
            Duration::from_secs(30),
        );
        let b5_top = run.b.grade(5)[0].with_nvars(5).unwrap();
        let step0: Vec<Monomial> = run.steps[0].added.iter().map(|a| a.monomial).collect();
        if step0 != vec![b5_top] || b5_top != largest_b5 {
            problems.push(format!(
                "seed {seed}: step 0 added {step0:?}, top of B_5 {b5_top:?}"
            ));
        }
        if run.s != vec![vec![1, 2, 3, 4]] {
            problems.push(format!("seed {seed}: S = {:?}", run.s));
        }
        let direct = run.direct.as_ref().unwrap();
        if !direct.initial_matches || direct.f_matches != Some(true) {
            problems.push(format!("seed {seed}: direct comparison {direct:?}"));
        }
        let f = run.f_counts().unwrap_or_default();
        let want = [1, 5, 14, 28, 44, 57, 62, 57, 44, 28, 14, 5, 1];
        if f.len() < want.len()
            || f[..want.len()] != want
            || f[want.len()..].iter().any(|&c| c != 0)
        {
            problems.push(format!("seed {seed}: f counts {f:?}"));
        }
        let f_tilde = run
            .f
            .as_ref()
            .map(|f| tilde_decompose(f).counts())
            .unwrap_or_default();
        if f_tilde.get(1..=6) != Some(&[4, 9, 14, 16, 13, 5][..]) {
            problems.push(format!("seed {seed}: f' counts {f_tilde:?}"));
        }
    }
    report(
        2,
        "5:2,3,3,4,5 incremental trace, S_1 = [1,4], f counts",
        &problems,
    );
}

#[test]
fn criterion_3_incremental_6_233455() {
    let t = ty("6:2,3,3,4,5,5");
    let mut problems = Vec::new();
    for seed in SEEDS {
        let start = Instant::now();
        let run = run_incremental(&t, PrimeField::default(), seed, true).unwrap();
        check_time(
            &mut problems,
            &format!("seed {seed}"),
            start.elapsed(),
            Duration::from_secs(180),
        );
        let step0: Vec<Monomial> = run.steps[0].added.iter().map(|a| a.monomial).collect();
        if step0 != vec![m(&[0, 2, 1, 2, 0, 0])] {
            problems.push(format!("seed {seed}: step 0 added {step0:?}"));
        }
        let s1 = run.steps.get(1).and_then(|s| s.s.clone());
        if s1 != Some(vec![1, 2, 3, 4, 6]) {
            problems.push(format!("seed {seed}: S_1 = {s1:?}"));
        }
        let flags: Vec<(usize, bool)> = run.steps[1]
            .added
            .iter()
            .map(|a| (a.position, a.redundant))
            .collect();
        if flags != vec![(1, false), (2, false), (3, false), (4, false), (6, true)] {
            problems.push(format!("seed {seed}: step 1 positions {flags:?}"));
        }
        let sixth = run.steps[1].added.last().map(|a| a.monomial);
        if sixth != Some(step0[0].times_var_pow(4, 1)) {
            problems.push(format!("seed {seed}: position 6 is {sixth:?}"));
        }
        let direct = run.direct.as_ref().unwrap();
        if !direct.initial_matches || direct.f_matches != Some(true) {
            problems.push(format!("seed {seed}: direct comparison {direct:?}"));
        }
    }
    report(
        3,
        "6:2,3,3,4,5,5 step 1 keeps [1,4] and 6, position 6 redundant",
        &problems,
    );
}

/// `(n+1; d_1..d_n, d)` types with `n <= 4`, degrees at most 5,
/// `d_n <= d < delta`.
fn grid_types() -> Vec<DegreeType> {
    let bases: [&[u32]; 13] = [
        &[3, 3],
        &[3, 4],
        &[4, 4],
        &[3, 5],
        &[4, 5],
        &[5, 5],
        &[2, 2, 2],
        &[2, 2, 3],
        &[2, 3, 3],
        &[3, 3, 3],
        &[2, 2, 2, 2],
        &[2, 2, 2, 3],
        &[2, 3, 3, 4],
    ];
    let mut out = Vec::new();
    for base in bases {
        let n = base.len();
        let j = DegreeType::new(n, base.to_vec()).unwrap();
        let delta = sigma_profile(&j).top_delta() as u32;
        for d in *base.last().unwrap()..delta.min(6) {
            let mut degrees = base.to_vec();
            degrees.push(d);
            out.push(DegreeType::new(n + 1, degrees).unwrap());
        }
    }
    out
}

const GRID_SEEDS: [u64; 3] = [0, 7, 1234];

#[test]
fn criterion_4_assembly_matches_direct_bases() {
    let mut problems = Vec::new();
    let mut pairs = 0;
    for t in grid_types() {
        for seed in GRID_SEEDS {
            pairs += 1;
            match run_incremental(&t, PrimeField::default(), seed, true) {
                Ok(run) => {
                    let direct = run.direct.as_ref().unwrap();
                    if !direct.initial_matches || direct.f_matches != Some(true) {
                        problems.push(format!("{t} seed {seed}: {direct:?}"));
                    }
                }
                Err(e) => problems.push(format!("{t} seed {seed}: {e}")),
            }
        }
    }
    if pairs < 20 {
        problems.push(format!("only {pairs} pairs"));
    }
    report(
        4,
        &format!("assembled in(I,g) and F equal direct bases on {pairs} (type, seed) pairs"),
        &problems,
    );
}

#[test]
fn criterion_5_structure_b_on_grid() {
    let mut problems = Vec::new();
    let mut checked = 0;
    for t in grid_types() {
        let t_j = t.truncate_last().unwrap();
        for seed in GRID_SEEDS {
            let run = match run_incremental(&t, PrimeField::default(), seed, false) {
                Ok(run) => run,
                Err(e) => {
                    problems.push(format!("{t} seed {seed}: {e}"));
                    continue;
                }
            };
            let rb = check_structure_b(&run.b, &t_j).unwrap();
            checked += 1;
            if !rb.holds() {
                problems.push(format!("{t_j} seed {seed}: {:?}", rb.violations));
            }
            if let Some(f) = &run.f {
                let rf = check_structure_b(f, &t).unwrap();
                checked += 1;
                if !rf.holds() {
                    problems.push(format!("{t} seed {seed}: {:?}", rf.violations));
                }
            }
            let r = run_check(
                Conjecture::StructureB,
                &t_j,
                PrimeField::default(),
                seed,
                None,
                false,
            )
            .unwrap();
            checked += 1;
            if r.verdict != Verdict::Holds {
                problems.push(format!("{t_j} seed {seed}: {:?}", r.witnesses));
            }
        }
    }
    report(
        5,
        &format!("structure clauses (1)-(3) on {checked} guarded instances"),
        &problems,
    );
}

#[test]
fn criterion_6_conjecture_regression() {
    let p = PrimeField::default();
    let mut problems = Vec::new();
    let mut checks = 0;
    let mut run = |c: Conjecture, t: &DegreeType, seed: u64, bound: Option<usize>| {
        checks += 1;
        match run_check(c, t, p, seed, bound, true) {
            Ok(r) if r.verdict == Verdict::Holds && r.regime.is_proven() => Some(r),
            Ok(r) => {
                problems.push(format!(
                    "{c} {t} seed {seed}: {:?} {:?}",
                    r.verdict, r.witnesses
                ));
                None
            }
            Err(e) => {
                problems.push(format!("{c} {t} seed {seed}: {e}"));
                None
            }
        }
    };

    let small = ["2:2,2", "2:3,5", "3:2,2,2", "3:2,3,4", "3:3,3,3", "3:2,4,5"];
    let condition1 = [
        "4:2,2,2,2",
        "4:2,3,3,4",
        "4:2,2,3,3",
        "5:2,2,2,2,2",
        "5:2,2,3,3,4",
    ];
    for s in small.iter().chain(&condition1) {
        let t = ty(s);
        assert!(
            t.n() <= 3 || condition1_check(&t).holds,
            "{t} outside the regime"
        );
        for seed in 0..3 {
            run(Conjecture::PardueE, &t, seed, None);
            run(Conjecture::PardueC, &t, seed, None);
        }
    }

    let froberg = [
        ("3:2,2", Some(8)),
        ("4:2,3", Some(8)),
        ("4:2,2,3,3", None),
        ("2:2,2,2", None),
        ("3:2,2,2,2", None),
        ("3:2,2,3,3,3", None),
        ("4:2,2,2,2,2", None),
        ("5:2,2,2,2,2,2", None),
    ];
    let mut hf_problems = Vec::new();
    for (s, bound) in froberg {
        let t = ty(s);
        assert!(
            t.r() <= t.n() || t.n() <= 3 || condition1_check(&t).holds,
            "{t} outside the regime"
        );
        for seed in 0..3 {
            let r = run(Conjecture::Froberg, &t, seed, bound);
            if s == "4:2,2,2,2,2" {
                if let Some(r) = r {
                    if r.hf_computed[..4] != [1, 4, 5, 0] {
                        hf_problems.push(format!("{s} seed {seed}: hf {:?}", r.hf_computed));
                    }
                }
            }
        }
    }
    problems.extend(hf_problems);
    if checks < 50 {
        problems.push(format!("only {checks} checks"));
    }
    report(
        6,
        &format!("{checks} property P, semi-regularity and ceiling-series checks"),
        &problems,
    );
}

#[test]
fn criterion_7_projection_keeps_minimal_generators() {
    let p = PrimeField::default();
    let types = [
        "3:2,2",
        "3:2,3",
        "3:3,3",
        "4:2,2,2",
        "4:2,2,3",
        "4:2,3,3",
        "4:3,3,3",
        "5:2,2,2,2",
        "5:2,2,2,3",
        "5:2,3,3,4",
    ];
    let mut problems = Vec::new();
    let mut instances = 0;
    for s in types {
        let t = ty(s);
        let n = t.n() - 1;
        let t_j = DegreeType::new(n, t.degrees().to_vec()).unwrap();
        let ci = ci_series(&t_j).unwrap();
        let delta = ci.bound();
        let expected: Vec<u64> = ci.to_i64_vec().unwrap().iter().map(|&x| x as u64).collect();
        for seed in [0u64, 1] {
            let mut inst = GenericInstance::sample(&t, p, seed);
            let (in_i, in_j) = loop {
                let forms_j: Vec<Polynomial> = inst.forms.iter().map(|f| f.project(n)).collect();
                let in_j = groebner(p, &forms_j, delta as u32 + 1)
                    .unwrap()
                    .initial_ideal();
                if in_j.hilbert_function_upto(delta as u32) != expected {
                    assert!(
                        inst.resample_count < 8,
                        "{s} seed {seed}: no generic sample"
                    );
                    inst = inst.resampled();
                    continue;
                }
                let in_i = inst.groebner(delta as u32 + 2).unwrap().initial_ideal();
                break (in_i, in_j);
            };
            instances += 1;
            let lifted: MonomialIdeal = in_j.embed(n + 1);
            if in_i.generators() != lifted.generators() {
                problems.push(format!(
                    "{s} seed {seed}: {} vs {} generators",
                    in_i.generators().len(),
                    lifted.generators().len()
                ));
            }
        }
    }
    report(
        7,
        &format!("in(I) and in(J) share minimal generators on {instances} instances"),
        &problems,
    );
}

fn run_suite<S: Strategy>(
    problems: &mut Vec<String>,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    if let Err(e) = runner.run(&strategy, test) {
        problems.push(format!("{name}: {e}"));
    }
}

#[test]
fn criterion_8_invariant_suites() {
    let mut problems = Vec::new();
    run_suite(&mut problems, "ceiling idempotence", series(), |s| {
        inv::ceiling_idempotent(&s)
    });
    run_suite(&mut problems, "ceiling sign and tail", series(), |s| {
        inv::ceiling_nonnegative_zero_tail(&s)
    });
    run_suite(&mut problems, "ci symmetry", square_type(), |t| {
        inv::ci_symmetric(&t)
    });
    run_suite(&mut problems, "ci unimodality", square_type(), |t| {
        inv::ci_unimodal(&t)
    });
    run_suite(
        &mut problems,
        "order totality",
        monomial_triple(),
        |(a, b, c)| inv::order_total(&a, &b, &c),
    );
    run_suite(
        &mut problems,
        "order multiplicativity",
        monomial_triple(),
        |(a, b, c)| inv::order_multiplicative(&a, &b, &c),
    );
    let nf_input = (
        ideal_case(3, 3),
        0u32..=5,
        form(3, 5, 0.7),
        form(3, 5, 0.7),
        any::<u32>(),
        any::<u32>(),
    );
    run_suite(
        &mut problems,
        "normal form laws",
        nf_input,
        |(case, k, fa, fb, a, b)| inv::normal_form_laws(&case, k, &fa, &fb, a, b),
    );
    run_suite(
        &mut problems,
        "Hilbert function vs Macaulay",
        ideal_case(3, 3),
        |case| inv::hilbert_matches_macaulay(&case, 7),
    );
    report(
        8,
        "series and algebra invariants, 1000 cases each",
        &problems,
    );
}
