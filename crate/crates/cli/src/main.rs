//! `quiverx`: command-line front end.
//!
//! Exit codes: 0 ran and the property holds (where one applies), 1 ran and it
//! fails, 2 usage or input error, 3 inconclusive (budget exceeded or a
//! pseudorandom search was exhausted).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use quiverx::classify::{self, ClassifyConfig, Verdict, XReport};
use quiverx::forms::{self, BimoduleShape, SpeciesVerdict};
use quiverx::presentation::AlgebraPresentation;
use quiverx::repcat::{composition_series, CompVector, Representation, SearchConfig, DEFAULT_SEED};
use quiverx::report;
use quiverx::separated;

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "quiverx",
    version,
    about = "Exact GF(p) quiver representations and composition-factor rigidity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide up to a length bound whether indecomposables are determined by composition factors
    Check(BoundArgs),
    /// Isomorphism classes of indecomposables with one dimension vector
    Classify(ClassifyArgs),
    /// Composition series of a representation
    Series(SeriesArgs),
    /// Quadratic form data of a bimodule shape
    Form(FormArgs),
    /// Pairwise dimension-product test for species data
    SpeciesCheck(SpeciesArgs),
    /// Emit the separated quiver of a radical-square-zero algebra
    Separate(SeparateArgs),
    /// Check the separated functor on all indecomposables up to a bound
    VerifySeparated(BoundArgs),
    /// Indecomposable class counts per dimension vector
    Count(BoundArgs),
}

#[derive(Args)]
struct Common {
    /// Override the field characteristic of the spec
    #[arg(long)]
    field: Option<u64>,
    /// Enumerate only while p^entries <= 2^BUDGET
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(10..=127))]
    budget: u32,
    /// Worker threads for enumeration
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    threads: u64,
    /// Seed for the pseudorandom fallback, in hex
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// Algebra spec (JSON)
    spec: PathBuf,
    /// Largest composition length examined
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    bound: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ClassifyArgs {
    spec: PathBuf,
    /// Dimension vector, comma separated
    #[arg(long, value_parser = parse_dimvec)]
    dim: CompVector,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SeriesArgs {
    spec: PathBuf,
    /// Representation (JSON)
    rep: PathBuf,
    #[arg(long)]
    field: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FormArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    /// Centre degree on the first side; with --f2 also reports q
    #[arg(long, requires = "f2")]
    f1: Option<u64>,
    #[arg(long, requires = "f1")]
    f2: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpeciesArgs {
    /// A pair of bimodule dimensions `l,r`; repeatable
    #[arg(long = "pair", value_parser = parse_pair)]
    pairs: Vec<(u64, u64)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeparateArgs {
    spec: PathBuf,
    #[arg(long)]
    field: Option<u64>,
    /// Write the separated spec here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("invalid hex seed {s:?}: {e}"))
}

fn parse_dimvec(s: &str) -> Result<CompVector, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("invalid dimension {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()
        .map(CompVector)
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (l, r) = s.split_once(',').ok_or_else(|| format!("expected `l,r`, got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| format!("invalid dimension {t:?}: {e}"))
    };
    Ok((num(l)?, num(r)?))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_algebra(path: &Path, field: Option<u64>) -> Result<AlgebraPresentation, String> {
    let text = read(path)?;
    let alg = AlgebraPresentation::parse_spec(&text).map_err(|e| format!("{}: [{}] {e}", path.display(), e.code()))?;
    match field {
        Some(p) => alg.with_field(p).map_err(|e| format!("--field: [{}] {e}", e.code())),
        None => Ok(alg),
    }
}

fn config(c: &Common) -> ClassifyConfig {
    ClassifyConfig {
        budget_log2: c.budget,
        threads: c.threads as usize,
        search: SearchConfig {
            seed: c.seed.unwrap_or(DEFAULT_SEED),
            ..SearchConfig::default()
        },
    }
}

fn write_out(out: Option<&Path>, value: &Value) -> Result<(), String> {
    match out {
        Some(p) => report::emit_report(value, p).map_err(|e| e.to_string()),
        None => Ok(()),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::HoldsUpToBound => EXIT_HOLDS,
        Verdict::Fails => EXIT_FAILS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn print_counts(r: &XReport) {
    println!("{:<16} classes", "dimvec");
    for row in &r.counts {
        println!("{:<16} {}", row.dimvec.to_string(), row.count);
    }
    for s in &r.skipped {
        println!(
            "{:<16} skipped ({} entries over budget)",
            s.dimvec.to_string(),
            s.entries
        );
    }
}

fn header(alg: &AlgebraPresentation, path: &Path, bound: u64, seed: u64) {
    println!(
        "algebra {}  GF({})  bound {}  seed {}",
        path.display(),
        alg.field().modulus(),
        bound,
        report::seed_hex(seed)
    );
}

fn run_check(a: &BoundArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.common.field)?;
    let cfg = config(&a.common);
    let r = classify::check_property_x(&alg, a.bound as usize, &cfg).map_err(|e| e.to_string())?;
    header(&alg, &a.spec, a.bound, cfg.search.seed);
    print_counts(&r);
    println!("total indecomposable classes: {}", r.total_classes());
    for v in &r.violations {
        println!(
            "violation at {}: {} non-isomorphic indecomposables{}",
            v.dimvec,
            v.reps.len(),
            if v.certain { "" } else { " (probabilistic)" }
        );
    }
    println!("verdict: {}", r.verdict.as_str());
    write_out(a.common.out.as_deref(), &report::x_report_json(&alg, &r))?;
    Ok(verdict_code(r.verdict))
}

fn run_count(a: &BoundArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.common.field)?;
    let cfg = config(&a.common);
    let r = classify::count_table(&alg, a.bound as usize, &cfg).map_err(|e| e.to_string())?;
    header(&alg, &a.spec, a.bound, cfg.search.seed);
    print_counts(&r);
    write_out(a.common.out.as_deref(), &report::count_table_json(&r))?;
    Ok(if r.probabilistic || !r.skipped.is_empty() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_HOLDS
    })
}

fn run_classify(a: &ClassifyArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.common.field)?;
    let cfg = config(&a.common);
    let t = match classify::classify_indecomposables(&alg, a.dim.as_slice(), &cfg) {
        Ok(t) => t,
        Err(e @ classify::ClassifyError::Budget { .. }) => {
            eprintln!("{e}");
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(e.to_string()),
    };
    println!(
        "dimvec {}  GF({})  enumerated {}  classes {}",
        t.dimvec,
        alg.field().modulus(),
        t.enumerated,
        t.count()
    );
    for (i, (r, size)) in t.representatives.iter().zip(&t.class_sizes).enumerate() {
        println!("#{i} ({size} tuples) {}", r.to_json(&alg));
    }
    write_out(
        a.common.out.as_deref(),
        &report::class_table_json(&alg, &t, cfg.search.seed),
    )?;
    Ok(if t.certain { EXIT_HOLDS } else { EXIT_INCONCLUSIVE })
}

fn run_series(a: &SeriesArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.field)?;
    let m = Representation::from_json(&alg, &read(&a.rep)?).map_err(|e| format!("{}: {e}", a.rep.display()))?;
    let s = composition_series(&alg, &m).map_err(|e| e.to_string())?;
    let names = alg.quiver().vertices();
    println!("length {}", s.length());
    for (k, &v) in s.factors.iter().enumerate() {
        println!("factor {}: S({})", k + 1, names[v]);
    }
    write_out(a.out.as_deref(), &report::series_json(&alg, &s))?;
    Ok(EXIT_HOLDS)
}

fn run_form(a: &FormArgs) -> Result<u8, String> {
    let shape = BimoduleShape::new(a.a, a.b).map_err(|e| e.to_string())?;
    let spec = match (a.f1, a.f2) {
        (Some(f1), Some(f2)) => Some(
            shape
                .consistent_spec(f1, f2)
                .ok_or_else(|| format!("inconsistent degrees: a·f2 = {} but b·f1 = {}", a.a * f2, a.b * f1))?,
        ),
        _ => None,
    };
    let value = report::form_json(&shape, spec.as_ref());
    let finite = forms::is_finite_type(&shape);
    println!("shape ({},{})  ab = {}", a.a, a.b, a.a * a.b);
    println!("tilde matrix {:?}", forms::tilde_matrix(&shape));
    println!("type: {}", if finite { "finite" } else { "infinite" });
    match forms::find_null_vector(&shape) {
        Some(n) => println!(
            "null vector ({},{}){}  defect {}",
            n.vector.0,
            n.vector.1,
            if n.swapped { " [swapped orientation]" } else { "" },
            value["defect"]
        ),
        None => println!("null vector: none"),
    }
    if let Some(s) = &spec {
        println!(
            "q = {}X² + {}Y² − {}XY  positive definite: {}",
            s.f1,
            s.f2,
            s.m,
            forms::is_positive_definite(s)
        );
    }
    write_out(a.out.as_deref(), &value)?;
    Ok(if finite { EXIT_HOLDS } else { EXIT_FAILS })
}

fn run_species(a: &SpeciesArgs) -> Result<u8, String> {
    let verdict = forms::species_criterion(&a.pairs);
    match verdict {
        SpeciesVerdict::Pass => println!("pass: every dimension product is at most 3"),
        SpeciesVerdict::Fail(i) => {
            let (l, r) = a.pairs[i];
            println!("fail: pair {i} = ({l},{r}) has product {}", l * r);
        }
    }
    write_out(a.out.as_deref(), &report::species_json(&a.pairs, verdict))?;
    Ok(match verdict {
        SpeciesVerdict::Pass => EXIT_HOLDS,
        SpeciesVerdict::Fail(_) => EXIT_FAILS,
    })
}

fn run_separate(a: &SeparateArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.field)?;
    let sep = separated::separated_presentation(&alg).map_err(|e| e.to_string())?;
    let text = sep.gamma.serialize();
    match &a.out {
        Some(p) => {
            let value: Value = serde_json::from_str(&text).expect("serialized spec is JSON");
            write_out(Some(p), &value)?;
            println!(
                "separated quiver: {} vertices, {} arrows -> {}",
                sep.gamma.quiver().vertex_count(),
                sep.gamma.quiver().arrow_count(),
                p.display()
            );
        }
        None => print!(
            "{}",
            report::canonical_string(&serde_json::from_str(&text).expect("serialized spec is JSON"))
        ),
    }
    Ok(EXIT_HOLDS)
}

fn run_verify(a: &BoundArgs) -> Result<u8, String> {
    let alg = load_algebra(&a.spec, a.common.field)?;
    let cfg = config(&a.common);
    let r = separated::verify_separated(&alg, a.bound as usize, &cfg).map_err(|e| e.to_string())?;
    header(&alg, &a.spec, a.bound, cfg.search.seed);
    println!(
        "indecomposable classes: {} over the algebra, {} over the separated quiver",
        r.lambda_classes, r.gamma_classes
    );
    println!("{:<20} {:<6} checked", "check", "result");
    for c in &r.checks {
        println!(
            "{:<20} {:<6} {}{}",
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.checked,
            if c.bounded { " (bounded)" } else { "" }
        );
    }
    println!("verdict: {}", r.verdict.as_str());
    write_out(a.common.out.as_deref(), &report::separated_report_json(&r))?;
    Ok(verdict_code(r.verdict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Classify(a) => run_classify(a),
        Command::Series(a) => run_series(a),
        Command::Form(a) => run_form(a),
        Command::SpeciesCheck(a) => run_species(a),
        Command::Separate(a) => run_separate(a),
        Command::VerifySeparated(a) => run_verify(a),
        Command::Count(a) => run_count(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
