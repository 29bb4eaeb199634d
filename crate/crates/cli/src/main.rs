//! `gin`: series, initial ideals, incremental traces and conjecture checks
//! on seeded generic instances.
//!
//! Every flag can also be set through an environment variable named
//! `GIN_<FLAG>` (`GIN_TYPE`, `GIN_PRIME`, `GIN_SEED`, ...). Grid runs use
//! seed `seed + k` for trial `k`.

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use gin_core::algebra::{Monomial, PrimeField, DEFAULT_PRIME};
use gin_core::conjectures::{
    default_check_bound, run_check, Conjecture, ConjectureReport, Verdict,
};
use gin_core::generic::{genericity_guard, GenericInstance, Regime};
use gin_core::series::{
    ci_series, condition1_check, froberg_series, raw_froberg_series, sigma_profile,
    Condition1Report, DegreeType, TruncatedSeries,
};
use gin_core::structure::{
    run_incremental, tilde_decompose, Branch, IncrementalRun, StandardMonomialSet,
};

#[derive(Parser, Debug)]
#[command(
    name = "gin",
    version,
    about = "Initial ideals of generic homogeneous ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Type as "n:d1,d2,...,dr", e.g. "4:2,3,3,4".
    #[arg(long = "type", global = true, env = "GIN_TYPE")]
    degree_type: Option<String>,

    #[arg(long, global = true, env = "GIN_PRIME", default_value_t = u64::from(DEFAULT_PRIME))]
    prime: u64,

    #[arg(long, global = true, env = "GIN_SEED", default_value_t = 0)]
    seed: u64,

    /// Number of seeds in a grid run: seed, seed+1, ...
    #[arg(long, global = true, env = "GIN_TRIALS", default_value_t = 1)]
    trials: u64,

    /// Truncation degree; required when r < n.
    #[arg(long, global = true, env = "GIN_BOUND")]
    bound: Option<usize>,

    #[arg(long, global = true, env = "GIN_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Emit per-step JSON records (incremental-trace) or grade listings (initial).
    #[arg(long, global = true, env = "GIN_TRACE")]
    trace: bool,

    /// Cross-check against direct Gröbner basis computations.
    #[arg(long, global = true, env = "GIN_VERIFY")]
    verify: bool,

    /// Worker threads for grid runs; 0 uses every core.
    #[arg(long, global = true, env = "GIN_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ceiling and complete-intersection series with the sigma profile.
    Series,
    /// Minimal generators of the initial ideal and standard monomial counts.
    Initial,
    /// Step-by-step construction of in(I, g) from in(I).
    IncrementalTrace,
    /// Check a conjecture predicate on one or more seeds.
    Check {
        #[arg(value_enum)]
        conjecture: ConjectureArg,
    },
    /// Run a few known cases end to end.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConjectureArg {
    Froberg,
    PardueE,
    PardueC,
    Moreno,
    StructureB,
    StructureF,
}

impl From<ConjectureArg> for Conjecture {
    fn from(c: ConjectureArg) -> Self {
        match c {
            ConjectureArg::Froberg => Conjecture::Froberg,
            ConjectureArg::PardueE => Conjecture::PardueE,
            ConjectureArg::PardueC => Conjecture::PardueC,
            ConjectureArg::Moreno => Conjecture::Moreno,
            ConjectureArg::StructureB => Conjecture::StructureB,
            ConjectureArg::StructureF => Conjecture::StructureF,
        }
    }
}

/// How a command ended, mapped to the process exit code.
enum Outcome {
    Clean,
    Violations,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, outcome)) => {
            print!("{out}");
            match outcome {
                Outcome::Clean => ExitCode::SUCCESS,
                Outcome::Violations => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, Outcome)> {
    let prime = PrimeField::new(cli.prime)?;
    match &cli.command {
        Command::Series => cmd_series(cli, &parse_type(cli)?),
        Command::Initial => cmd_initial(cli, &parse_type(cli)?, prime),
        Command::IncrementalTrace => cmd_incremental_trace(cli, prime),
        Command::Check { conjecture } => {
            cmd_check(cli, (*conjecture).into(), &parse_type(cli)?, prime)
        }
        Command::Selftest => cmd_selftest(cli),
    }
}

fn raw_type(cli: &Cli) -> Result<&str> {
    cli.degree_type
        .as_deref()
        .ok_or_else(|| anyhow!("--type is required for this command"))
}

fn parse_type(cli: &Cli) -> Result<DegreeType> {
    let raw = raw_type(cli)?;
    raw.parse().with_context(|| format!("invalid type '{raw}'"))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", join(items, ","))
}

/// Rows `i`, then one row per named sequence, aligned in columns.
fn table(rows: &[(&str, Vec<String>)], start: usize) -> String {
    let len = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let head: Vec<String> = (start..start + len).map(|i| i.to_string()).collect();
    let width = rows
        .iter()
        .flat_map(|(_, v)| v.iter())
        .chain(&head)
        .map(String::len)
        .max()
        .unwrap_or(1);
    let label = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    let mut line = |name: &str, cells: &[String]| {
        let _ = write!(out, "  {name:>label$} |");
        for c in cells {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    };
    line("i", &head);
    for (name, cells) in rows {
        line(name, cells);
    }
    out
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct SeriesOutput {
    #[serde(rename = "type")]
    degree_type: DegreeType,
    raw: TruncatedSeries,
    froberg: TruncatedSeries,
    ci: Option<TruncatedSeries>,
    delta: i64,
    delta_star: i64,
    sigma: Option<i64>,
    condition1: Condition1Report,
}

fn cmd_series(cli: &Cli, t: &DegreeType) -> Result<(String, Outcome)> {
    let bound = cli.bound.unwrap_or_else(|| t.default_bound());
    let profile = sigma_profile(t);
    let output = SeriesOutput {
        degree_type: t.clone(),
        raw: raw_froberg_series(t, bound),
        froberg: froberg_series(t, bound),
        ci: if t.r() == t.n() {
            Some(ci_series(t)?)
        } else {
            None
        },
        delta: profile.top_delta(),
        delta_star: profile.top_delta_star(),
        sigma: profile.top_sigma(),
        condition1: condition1_check(t),
    };
    if cli.format == Format::Json {
        return Ok((json(&output)?, Outcome::Clean));
    }
    let mut out = String::new();
    writeln!(out, "type {t}, bound {bound}")?;
    writeln!(out, "product    {}", output.raw)?;
    let cut = output.froberg.last_nonzero().map_or(0, |k| k + 1);
    if cut <= bound {
        writeln!(out, "ceiling    {} (cut at degree {cut})", output.froberg)?;
    } else {
        writeln!(out, "ceiling    {}", output.froberg)?;
    }
    if let Some(ci) = &output.ci {
        writeln!(out, "ci         {ci}")?;
    }
    write!(
        out,
        "delta = {}, delta* = {}",
        output.delta, output.delta_star
    )?;
    match output.sigma {
        Some(s) => writeln!(out, ", sigma = {s}")?,
        None => writeln!(out)?,
    }
    let c1 = &output.condition1;
    writeln!(
        out,
        "condition (1): {}",
        if c1.holds { "holds" } else { "fails" }
    )?;
    for e in &c1.entries {
        writeln!(
            out,
            "  i = {}: d_i = {} {} sigma_(i-1) = {}",
            e.index,
            e.degree,
            if e.pass { ">=" } else { "<" },
            e.sigma_prev
        )?;
    }
    Ok((out, Outcome::Clean))
}

#[derive(Serialize)]
struct InitialOutput {
    instance: GenericInstance,
    regime: Regime,
    bound: usize,
    generators: Vec<Monomial>,
    counts: Vec<u64>,
    tilde_counts: Option<Vec<usize>>,
    standard: Option<StandardMonomialSet>,
}

fn cmd_initial(cli: &Cli, t: &DegreeType, prime: PrimeField) -> Result<(String, Outcome)> {
    let bound = match cli.bound {
        Some(b) => b,
        None => default_check_bound(t)?,
    };
    let expected = froberg_series(t, bound);
    let guarded = genericity_guard(
        GenericInstance::sample(t, prime, cli.seed),
        &expected,
        bound,
    )?;
    let square = t.r() == t.n();
    let b = StandardMonomialSet::from_ideal(&guarded.initial, bound);
    let output = InitialOutput {
        instance: guarded.instance,
        regime: guarded.regime,
        bound,
        generators: guarded.initial.generators().to_vec(),
        counts: guarded.hilbert,
        tilde_counts: square.then(|| tilde_decompose(&b).counts()),
        standard: cli.trace.then_some(b),
    };
    if cli.format == Format::Json {
        return Ok((json(&output)?, Outcome::Clean));
    }
    let mut out = String::new();
    writeln!(
        out,
        "type {t}, p = {}, seed {}, resamples {}",
        prime.modulus(),
        cli.seed,
        output.instance.resample_count
    )?;
    if let Some(div) = guarded.divergence {
        writeln!(
            out,
            "note: Hilbert function leaves the ceiling series at degree {} ({} expected, {} found)",
            div.degree, div.expected, div.found
        )?;
    }
    writeln!(out, "minimal generators ({}):", output.generators.len())?;
    for g in &output.generators {
        writeln!(out, "  {g}")?;
    }
    writeln!(out, "standard monomials:")?;
    let mut rows = vec![("a_i", strings(&output.counts))];
    if let Some(tc) = &output.tilde_counts {
        rows.push(("a'_i", strings(tc)));
    }
    out.push_str(&table(&rows, 0));
    if let Some(b) = &output.standard {
        for i in 0..=b.top() {
            writeln!(out, "  B_{i} = {{{}}}", join(b.grade(i), ", "))?;
        }
    }
    Ok((out, Outcome::Clean))
}

/// The last raw degree is `d`, the degree of `g`; it must not be smaller
/// than the others.
fn check_last_is_largest(raw: &str) -> Result<()> {
    let degrees: Vec<u32> = raw
        .split_once(':')
        .map(|(_, ds)| {
            ds.split(',')
                .filter_map(|x| x.trim().parse().ok())
                .collect()
        })
        .unwrap_or_default();
    if let Some((&d, rest)) = degrees.split_last() {
        if let Some(&top) = rest.iter().max() {
            if d < top {
                bail!("the last degree is the degree of g and must be the largest, got d = {d} < {top}");
            }
        }
    }
    Ok(())
}

fn cmd_incremental_trace(cli: &Cli, prime: PrimeField) -> Result<(String, Outcome)> {
    let raw = raw_type(cli)?;
    let t = parse_type(cli)?;
    check_last_is_largest(raw)?;
    let run = run_incremental(&t, prime, cli.seed, cli.verify)?;
    let mismatch = run
        .direct
        .as_ref()
        .is_some_and(|d| !d.initial_matches || d.f_matches == Some(false));
    let outcome = if mismatch {
        Outcome::Violations
    } else {
        Outcome::Clean
    };
    if cli.format == Format::Json {
        return Ok((json(&run)?, outcome));
    }
    Ok((trace_text(cli, &t, &run)?, outcome))
}

fn trace_text(cli: &Cli, t: &DegreeType, run: &IncrementalRun) -> Result<String> {
    let mut out = String::new();
    writeln!(
        out,
        "type {t}, p = {}, seed {}, resamples {}",
        run.instance.prime.modulus(),
        run.instance.seed,
        run.instance.resample_count
    )?;
    let sigma = run.sigma.map_or("-".to_string(), |s| s.to_string());
    let istar = run.i_star.map_or("-".to_string(), |s| s.to_string());
    let branch = match run.branch {
        Branch::Even => "even",
        Branch::Odd => "odd",
        Branch::Closed => "closed (d >= delta)",
    };
    writeln!(
        out,
        "n = {}, d = {}, delta = {}, sigma = {sigma}, i* = {istar}, branch {branch}",
        run.n, run.d, run.delta
    )?;
    let tilde = tilde_decompose(&run.b).counts();
    out.push_str(&table(
        &[("a_i", strings(&run.b.counts())), ("a'_i", strings(&tilde))],
        0,
    ));
    for step in &run.steps {
        if cli.trace {
            writeln!(out, "{}", serde_json::to_string(step)?)?;
            continue;
        }
        write!(
            out,
            "step {}: {} x {} matrix, rank {}, kept columns {}",
            step.step,
            step.rows,
            step.cols,
            step.rank,
            list(&step.kept_columns)
        )?;
        if let Some(s) = &step.s {
            write!(out, ", S_{} = {}", step.step, list(s))?;
        }
        writeln!(out)?;
        for a in &step.added {
            writeln!(
                out,
                "  add {} (B_{}^{{{}}}){}",
                a.monomial,
                run.d + step.step,
                a.position,
                if a.redundant { " redundant" } else { "" }
            )?;
        }
    }
    writeln!(
        out,
        "in(I, g): {} minimal generators",
        run.assembled.generators().len()
    )?;
    if let Some(f) = run.f_counts() {
        out.push_str(&table(&[("f_i", strings(&f))], 0));
    }
    if let Some(direct) = &run.direct {
        writeln!(
            out,
            "direct basis: initial ideal {}, standard monomials {}",
            if direct.initial_matches {
                "matches"
            } else {
                "DIFFERS"
            },
            match direct.f_matches {
                Some(true) => "match",
                Some(false) => "DIFFER",
                None => "not compared",
            }
        )?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct TrialError {
    seed: u64,
    error: String,
}

#[derive(Serialize)]
struct BatchOutput {
    conjecture: Conjecture,
    #[serde(rename = "type")]
    degree_type: DegreeType,
    reports: Vec<ConjectureReport>,
    errors: Vec<TrialError>,
}

fn cmd_check(
    cli: &Cli,
    conjecture: Conjecture,
    t: &DegreeType,
    prime: PrimeField,
) -> Result<(String, Outcome)> {
    if cli.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()?;
    let results: Vec<(u64, gin_core::Result<ConjectureReport>)> = pool.install(|| {
        (0..cli.trials)
            .into_par_iter()
            .map(|k| {
                let seed = cli.seed.wrapping_add(k);
                (
                    seed,
                    run_check(conjecture, t, prime, seed, cli.bound, cli.verify),
                )
            })
            .collect()
    });
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (seed, r) in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(TrialError {
                seed,
                error: e.to_string(),
            }),
        }
    }
    let violated = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Violated)
        .count();
    let outcome = if violated == 0 && errors.is_empty() {
        Outcome::Clean
    } else {
        Outcome::Violations
    };
    let batch = BatchOutput {
        conjecture,
        degree_type: t.clone(),
        reports,
        errors,
    };
    if cli.format == Format::Json {
        return Ok((json(&batch)?, outcome));
    }
    let mut out = String::new();
    writeln!(out, "{conjecture} on {t}, p = {}", prime.modulus())?;
    for r in &batch.reports {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::Violated => "VIOLATED",
            Verdict::OutOfRegime => "out of regime",
        };
        let regime = serde_json::to_value(r.regime)?;
        writeln!(
            out,
            "seed {}: {verdict} [{}] resamples {}, hf {}",
            r.seed,
            regime.as_str().unwrap_or_default(),
            r.resample_count,
            list(&r.hf_computed)
        )?;
        for w in &r.witnesses {
            writeln!(out, "  {}", serde_json::to_string(w)?)?;
        }
    }
    for e in &batch.errors {
        writeln!(out, "seed {}: error: {}", e.seed, e.error)?;
    }
    let holds = batch.reports.len() - violated;
    writeln!(
        out,
        "{} trials: {holds} without violation, {violated} violated, {} errors",
        cli.trials,
        batch.errors.len()
    )?;
    Ok((out, outcome))
}

fn cmd_selftest(cli: &Cli) -> Result<(String, Outcome)> {
    let prime = PrimeField::default();
    let mut results: Vec<(&str, Result<bool>)> = Vec::new();

    results.push((
        "ci series of 4:2,3,3,4",
        (|| {
            let t: DegreeType = "4:2,3,3,4".parse()?;
            Ok(ci_series(&t)?.to_i64_vec() == Some(vec![1, 4, 9, 14, 16, 14, 9, 4, 1]))
        })(),
    ));

    results.push((
        "ceiling series of 4:2,2,2,2,2",
        (|| {
            let t: DegreeType = "4:2,2,2,2,2".parse()?;
            let r = run_check(Conjecture::Froberg, &t, prime, cli.seed, None, false)?;
            Ok(r.verdict == Verdict::Holds && r.hf_computed[..4] == [1, 4, 5, 0])
        })(),
    ));

    results.push((
        "property P on 3:2,3,4",
        (|| {
            let t: DegreeType = "3:2,3,4".parse()?;
            Ok(
                run_check(Conjecture::PardueE, &t, prime, cli.seed, None, false)?.verdict
                    == Verdict::Holds,
            )
        })(),
    ));

    results.push((
        "incremental 5:2,3,3,4,5",
        (|| {
            let t: DegreeType = "5:2,3,3,4,5".parse()?;
            let run = run_incremental(&t, prime, cli.seed, true)?;
            let direct = run.direct.as_ref().expect("verified");
            Ok(direct.initial_matches
                && run.s == vec![vec![1, 2, 3, 4]]
                && run.f_counts() == Some(vec![1, 5, 14, 28, 44, 57, 62, 57, 44, 28, 14, 5, 1, 0]))
        })(),
    ));

    let mut out = String::new();
    let mut ok = true;
    for (name, r) in results {
        match r {
            Ok(true) => writeln!(out, "PASS {name}")?,
            Ok(false) => {
                ok = false;
                writeln!(out, "FAIL {name}")?
            }
            Err(e) => {
                ok = false;
                writeln!(out, "FAIL {name}: {e:#}")?
            }
        }
    }
    Ok((
        out,
        if ok {
            Outcome::Clean
        } else {
            Outcome::Violations
        },
    ))
}
