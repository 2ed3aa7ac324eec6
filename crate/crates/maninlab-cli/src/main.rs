//! Command-line front end: orbit-finiteness checks, affine diagram
//! classification, growth exponents, and bounded-height point counting.
//!
//! Output is JSON on stdout (CSV for series with `--csv`); every emitted
//! document re-parses into the originating data type. Failures print a
//! `{"error": …}` object and exit nonzero.

use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use maninlab::height_census::{
    builtin_variety, count_series, enumerate_points_engine_a, enumerate_points_engine_b,
    fit_exponents, local_density, parse_series_csv, series_to_csv, CountSeries, HeightSpec, Norm,
    VarietySpec, DEFAULT_FIT_WINDOW, DEFAULT_WORK_BUDGET,
};
use maninlab::manin_exponents::{
    ab_from_divisor_data, ab_group_variety, ab_wonderful_symmetric, trivial_orbits, DivisorData,
};
use maninlab::orbit_finiteness::{
    builtin_catalog, e6_f4, even_hyperplane, f4_spin9, find_pair, odd_hyperplane,
    projective_linear_double, symplectic_in_linear, symplectic_product, FinitenessReport, Isogeny,
    PairSpec, SymmetricPair, Verdict,
};
use maninlab::root_systems::{
    build_root_system, kac_classify, restricted_sum_psl2n_psp, DiagramChoiceSpec, TwistKind,
    WeightInRootBasis,
};

#[derive(Parser)]
#[command(name = "maninlab", version, about = "Exact arithmetic of symmetric pairs and bounded-height point counts")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide orbit finiteness for a symmetric pair.
    OrbitCheck(OrbitCheckArgs),
    /// Run every shipped (and externally configured) pair and summarize.
    Catalog,
    /// Classify the fixed subgroup attached to an affine diagram choice.
    Kac(KacArgs),
    /// Compute growth exponents (a, b) from divisor data or root data.
    Exponents(ExponentsArgs),
    /// Coefficients of the restricted positive-root sum for the
    /// linear/symplectic family.
    RestrictedSum(RestrictedSumArgs),
    /// Count points of height below a threshold on one variety.
    Count(CountArgs),
    /// Count points along the sampling ladder up to --tmax.
    Series(SeriesArgs),
    /// Fit growth exponents to a counting series (CSV or JSON).
    Fit(FitArgs),
    /// Exact solution density of the affine chart modulo a prime.
    LocalDensity(LocalDensityArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwistFlag {
    Inner,
    Outer,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormFlag {
    Max,
    Euclid,
}

impl NormFlag {
    fn height_spec(self) -> HeightSpec {
        match self {
            NormFlag::Max => HeightSpec { norm: Norm::Max },
            NormFlag::Euclid => HeightSpec { norm: Norm::Euclidean },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineFlag {
    /// Direct box scan (oracle; budget-capped).
    A,
    /// Algebraic counting via sieve and convolution.
    B,
}

#[derive(Args)]
struct OrbitCheckArgs {
    /// Family selector (e.g. AII-adjoint, CII-sc, BDI-odd-adjoint,
    /// BDI-even-sc, EIV-adjoint, FII-sc, PSL-double) or an exact catalog
    /// entry name.
    #[arg(long)]
    pair: String,
    /// Size parameter for the AII and PSL-double families.
    #[arg(long)]
    n: Option<usize>,
    /// Size parameter for the BDI families.
    #[arg(long)]
    l: Option<usize>,
    /// First size parameter for the CII family.
    #[arg(long)]
    p: Option<usize>,
    /// Second size parameter for the CII family.
    #[arg(long)]
    q: Option<usize>,
    /// inner = untwisted form, outer = twisted form (where tabulated).
    #[arg(long, value_enum, default_value = "inner")]
    twist: TwistFlag,
}

#[derive(Args)]
struct KacArgs {
    /// Root system type letter: A, B, C, D, E, F, or G.
    #[arg(long = "type")]
    type_label: char,
    #[arg(long)]
    rank: usize,
    /// Distinguished vertex: 1..rank for inner twists; for outer twists,
    /// the documented family index (see README).
    #[arg(long)]
    vertex: usize,
    #[arg(long, value_enum)]
    twist: TwistFlag,
}

#[derive(Args)]
struct ExponentsArgs {
    /// JSON file with divisor data (multiplicities, intersection numbers,
    /// orbits); "-" reads stdin. Default mode.
    #[arg(long)]
    file: Option<String>,
    /// Root system type for the group-compactification mode.
    #[arg(long = "type")]
    type_label: Option<char>,
    #[arg(long)]
    rank: Option<usize>,
    /// Comma-separated positive rational weight coefficients in the simple
    /// root basis (group and wonderful modes).
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated restricted-root sum coefficients (wonderful mode).
    #[arg(long)]
    m: Option<String>,
    /// Boundary orbit partition as semicolon-separated index groups,
    /// e.g. "0;1,2". Default: every index its own orbit.
    #[arg(long)]
    orbits: Option<String>,
}

#[derive(Args)]
struct RestrictedSumArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    variety: String,
    /// Height threshold (strict), as an integer, decimal, or fraction.
    #[arg(long)]
    tmax: String,
    #[arg(long, value_enum, default_value = "max")]
    norm: NormFlag,
    #[arg(long, value_enum, default_value = "b")]
    engine: EngineFlag,
    /// Work budget in abstract steps.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    variety: String,
    #[arg(long)]
    tmax: String,
    #[arg(long, value_enum, default_value = "max")]
    norm: NormFlag,
    /// Emit T,N rows instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct FitArgs {
    /// Series input: CSV rows or a JSON series document; "-" reads stdin.
    #[arg(long, default_value = "-")]
    file: String,
    /// Trailing fraction of usable samples to fit.
    #[arg(long, default_value_t = DEFAULT_FIT_WINDOW)]
    window: f64,
}

#[derive(Args)]
struct LocalDensityArgs {
    #[arg(long)]
    variety: String,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    budget: Option<u64>,
}

/// Witness serialized with decimal-string coordinates.
#[derive(Serialize, Deserialize)]
struct WitnessOutput {
    subgroup: Vec<usize>,
    element: Vec<String>,
}

/// Orbit verdict as emitted on stdout.
#[derive(Serialize, Deserialize)]
struct OrbitCheckOutput {
    finite: bool,
    name: String,
    subgroups_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOutput>,
}

impl From<FinitenessReport> for OrbitCheckOutput {
    fn from(report: FinitenessReport) -> Self {
        let witness = match &report.verdict {
            Verdict::Finite => None,
            Verdict::Infinite(w) => Some(WitnessOutput {
                subgroup: w.subgroup.clone(),
                element: w.element.iter().map(BigInt::to_string).collect(),
            }),
        };
        OrbitCheckOutput {
            finite: report.is_finite(),
            name: report.name,
            subgroups_checked: report.subgroups_checked,
            witness,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogEntryOutput {
    name: String,
    finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<bool>,
    ok: bool,
}

#[derive(Serialize, Deserialize)]
struct CatalogOutput {
    total: usize,
    mismatches: usize,
    entries: Vec<CatalogEntryOutput>,
}

#[derive(Serialize, Deserialize)]
struct RestrictedSumOutput {
    n: usize,
    coefficients: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct CountOutput {
    variety: String,
    t: String,
    norm: String,
    n: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore failure: the pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            use std::io::Write;
            let payload = serde_json::json!({ "error": format!("{e:#}") });
            let _ = writeln!(std::io::stdout(), "{payload}");
            std::process::exit(1);
        }
    }
}

/// Write one output document to stdout; exit quietly when the consumer
/// has closed the pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("stdout error: {e}");
        std::process::exit(1);
    }
}

fn emit_line(text: &str) {
    emit(&format!("{text}\n"));
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::OrbitCheck(args) => {
            let pair = resolve_pair(&args)?;
            let output = OrbitCheckOutput::from(pair.check_finiteness());
            emit_line(&serde_json::to_string(&output)?);
            Ok(())
        }
        Command::Catalog => run_catalog(),
        Command::Kac(args) => {
            let spec = DiagramChoiceSpec {
                type_label: args.type_label.to_ascii_uppercase(),
                rank: args.rank,
                vertex: args.vertex,
                twist: match args.twist {
                    TwistFlag::Inner => TwistKind::Inner,
                    TwistFlag::Outer => TwistKind::Outer,
                },
            };
            let verdict = kac_classify(&spec.resolve()?);
            emit_line(&serde_json::to_string(&verdict)?);
            Ok(())
        }
        Command::Exponents(args) => run_exponents(args),
        Command::RestrictedSum(args) => {
            let coefficients = restricted_sum_psl2n_psp(args.n)?;
            let out = RestrictedSumOutput { n: args.n, coefficients };
            emit_line(&serde_json::to_string(&out)?);
            Ok(())
        }
        Command::Count(args) => run_count(args),
        Command::Series(args) => run_series(args),
        Command::Fit(args) => {
            let text = read_input(&args.file)?;
            let series = parse_series(&text)?;
            let fit = fit_exponents(&series, args.window)?;
            emit_line(&serde_json::to_string(&fit)?);
            Ok(())
        }
        Command::LocalDensity(args) => {
            let spec = lookup_variety(&args.variety)?;
            let budget = args.budget.unwrap_or(100_000_000);
            let density = local_density(&spec, args.prime, budget)?;
            emit_line(&serde_json::to_string(&density)?);
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- catalogs

fn catalog_dir() -> Option<PathBuf> {
    std::env::var_os("MANINLAB_CATALOG_DIR").map(PathBuf::from)
}

fn external_varieties() -> Result<Vec<VarietySpec>> {
    let Some(dir) = catalog_dir() else { return Ok(Vec::new()) };
    let path = dir.join("varieties.json");
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading {}", path.display()))?;
    let list: Vec<VarietySpec> = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    for spec in &list {
        spec.validate().with_context(|| format!("validating variety {}", spec.name))?;
    }
    Ok(list)
}

fn external_pairs() -> Result<Vec<SymmetricPair>> {
    let Some(dir) = catalog_dir() else { return Ok(Vec::new()) };
    let path = dir.join("pairs.json");
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading {}", path.display()))?;
    let list: Vec<PairSpec> = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    list.into_iter()
        .map(|spec| {
            let name = spec.name.clone();
            spec.build().with_context(|| format!("building pair {name}"))
        })
        .collect()
}

fn lookup_variety(name: &str) -> Result<VarietySpec> {
    if let Some(v) = external_varieties()?.into_iter().find(|v| v.name == name) {
        return Ok(v);
    }
    builtin_variety(name).map_err(|e| anyhow!("{e}"))
}

fn run_catalog() -> Result<()> {
    let mut entries = Vec::new();
    let mut mismatches = 0usize;
    let mut pairs = builtin_catalog();
    pairs.extend(external_pairs()?);
    for pair in &pairs {
        let report = pair.check_finiteness();
        let finite = report.is_finite();
        let expected = pair.expected_finite();
        let ok = expected.map(|e| e == finite).unwrap_or(true);
        mismatches += !ok as usize;
        entries.push(CatalogEntryOutput { name: pair.name().to_string(), finite, expected, ok });
    }
    let out = CatalogOutput { total: entries.len(), mismatches, entries };
    emit_line(&serde_json::to_string(&out)?);
    if mismatches > 0 {
        std::process::exit(1);
    }
    Ok(())
}

// ------------------------------------------------------------- orbit-check

fn parse_isogeny(token: &str) -> Result<Isogeny> {
    match token {
        "adjoint" | "adj" => Ok(Isogeny::Adjoint),
        "sc" | "simply-connected" => Ok(Isogeny::SimplyConnected),
        other => bail!("unknown isogeny tag {other:?}; use adjoint or sc"),
    }
}

/// Exact catalog entry with the given name, built-in first, then external.
fn exact_pair(name: &str) -> Result<Option<SymmetricPair>> {
    if let Some(pair) = find_pair(name) {
        return Ok(Some(pair));
    }
    Ok(external_pairs()?.into_iter().find(|p| p.name() == name))
}

fn resolve_pair(args: &OrbitCheckArgs) -> Result<SymmetricPair> {
    // Exact catalog names win over family selectors: entries such as
    // "aII-n3-adj-twisted" share a prefix with the AII family grammar.
    if let Some(pair) = exact_pair(&args.pair)? {
        if args.twist == TwistFlag::Outer {
            bail!("--twist outer applies to family selectors; catalog entry names encode their twist");
        }
        return Ok(pair);
    }
    let token = args.pair.to_lowercase();
    let twisted = args.twist == TwistFlag::Outer;
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| anyhow!("family {} needs {flag}", args.pair))
    };
    let no_twist = |family: &str| {
        if twisted {
            bail!("family {family} has no tabulated twisted form");
        }
        Ok(())
    };

    if let Some(rest) = token.strip_prefix("aii-") {
        let iso = parse_isogeny(rest)?;
        return Ok(symplectic_in_linear(need(args.n, "--n")?, iso, twisted)?);
    }
    if let Some(rest) = token.strip_prefix("cii-") {
        let iso = parse_isogeny(rest)?;
        no_twist("CII")?;
        return Ok(symplectic_product(need(args.p, "--p")?, need(args.q, "--q")?, iso)?);
    }
    if let Some(rest) = token.strip_prefix("bdi-odd-") {
        let iso = parse_isogeny(rest)?;
        return Ok(odd_hyperplane(need(args.l, "--l")?, iso, twisted)?);
    }
    if let Some(rest) = token.strip_prefix("bdi-even-") {
        let iso = parse_isogeny(rest)?;
        no_twist("BDI-even")?;
        return Ok(even_hyperplane(need(args.l, "--l")?, iso)?);
    }
    if let Some(rest) = token.strip_prefix("eiv-") {
        let iso = parse_isogeny(rest)?;
        no_twist("EIV")?;
        return Ok(e6_f4(iso)?);
    }
    if let Some(rest) = token.strip_prefix("fii-") {
        let iso = parse_isogeny(rest)?;
        no_twist("FII")?;
        return Ok(f4_spin9(iso)?);
    }
    if token == "psl-double" {
        no_twist("PSL-double")?;
        return Ok(projective_linear_double(need(args.n, "--n")?)?);
    }

    bail!("no family or catalog entry matches {:?}", args.pair)
}

// --------------------------------------------------------------- exponents

fn parse_rational_list(text: &str) -> Result<Vec<BigRational>> {
    text.split(',')
        .map(|s| {
            maninlab::rational::parse_rational(s.trim()).map_err(|e| anyhow!("{e}"))
        })
        .collect()
}

fn parse_orbits(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|e| anyhow!("bad orbit index: {e}")))
                .collect()
        })
        .collect()
}

fn run_exponents(args: ExponentsArgs) -> Result<()> {
    let pair = if args.type_label.is_some() || args.rank.is_some() {
        let type_label = args.type_label.ok_or_else(|| anyhow!("group mode needs --type"))?;
        let rank = args.rank.ok_or_else(|| anyhow!("group mode needs --rank"))?;
        let lambda = WeightInRootBasis {
            coefficients: parse_rational_list(
                args.lambda.as_deref().ok_or_else(|| anyhow!("group mode needs --lambda"))?,
            )?,
        };
        let orbits = match &args.orbits {
            Some(o) => parse_orbits(o)?,
            None => trivial_orbits(lambda.coefficients.len()),
        };
        let rs = build_root_system(type_label.to_ascii_uppercase(), rank)?;
        ab_group_variety(&rs, &lambda, &orbits)?
    } else if let Some(m_text) = &args.m {
        let m = WeightInRootBasis { coefficients: parse_rational_list(m_text)? };
        let lambda = WeightInRootBasis {
            coefficients: parse_rational_list(
                args.lambda.as_deref().ok_or_else(|| anyhow!("wonderful mode needs --lambda"))?,
            )?,
        };
        let orbits = match &args.orbits {
            Some(o) => parse_orbits(o)?,
            None => trivial_orbits(lambda.coefficients.len()),
        };
        ab_wonderful_symmetric(&m, &lambda, &orbits)?
    } else {
        let text = read_input(args.file.as_deref().unwrap_or("-"))?;
        let data: DivisorData = serde_json::from_str(&text).context("parsing divisor data")?;
        ab_from_divisor_data(&data)
    };
    emit_line(&serde_json::to_string(&pair)?);
    Ok(())
}

// ---------------------------------------------------------------- counting

fn parse_threshold(text: &str) -> Result<BigRational> {
    maninlab::rational::parse_rational(text).map_err(|e| anyhow!("bad threshold: {e}"))
}

fn run_count(args: CountArgs) -> Result<()> {
    let spec = lookup_variety(&args.variety)?;
    let t = parse_threshold(&args.tmax)?;
    let h = args.norm.height_spec();
    let budget = args.budget.unwrap_or(DEFAULT_WORK_BUDGET);
    let n = match args.engine {
        EngineFlag::A => enumerate_points_engine_a(&spec, &t, &h, budget)?,
        EngineFlag::B => enumerate_points_engine_b(&spec, &t, &h, budget)?,
    };
    let out = CountOutput {
        variety: spec.name,
        t: t.to_string(),
        norm: match h.norm {
            Norm::Max => "max".into(),
            Norm::Euclidean => "euclidean".into(),
        },
        n,
    };
    emit_line(&serde_json::to_string(&out)?);
    Ok(())
}

fn run_series(args: SeriesArgs) -> Result<()> {
    let spec = lookup_variety(&args.variety)?;
    let t_max = parse_threshold(&args.tmax)?;
    let h = args.norm.height_spec();
    let budget = args.budget.unwrap_or(DEFAULT_WORK_BUDGET);
    let series = count_series(&spec, &t_max, &h, budget)?;
    let rendered = if args.csv {
        series_to_csv(&series)
    } else {
        let mut s = serde_json::to_string(&series)?;
        s.push('\n');
        s
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => emit(&rendered),
    }
    Ok(())
}

fn parse_series(text: &str) -> Result<CountSeries> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        Ok(serde_json::from_str(trimmed).context("parsing JSON series")?)
    } else {
        Ok(parse_series_csv(text)?)
    }
}

fn read_input(source: &str) -> Result<String> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))
    }
}

