use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zarankiewicz::bounds::{
    closed_form_best, closed_form_bk, kst_bound, reiman_bound, roman_best, roman_bound_k, BoundResult,
};
use zarankiewicz::exactmath::{fmt_rational, parse_rational};
use zarankiewicz::lpcore::{build_program, opt_bound, write_lp, Variant};
use zarankiewicz::oracle::{exact_z, ExactSearch};
use zarankiewicz::survey::render::{
    render_bounds, render_cells, render_curve, render_match_rows, render_oracle, render_verify, Format, TableLayout,
};
use zarankiewicz::survey::{improvement_curve, improvement_table, match_counts, with_jobs, Convention};
use zarankiewicz::verify::{run_suite, Fault, VerifyConfig, SUITES};
use zarankiewicz::{BigRational, Error, ZParams};

const EXIT_INVARIANT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// The (s, t) pairs covered by the published comparison.
const SURVEY_PAIRS: [(u32, u32); 6] = [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5)];

#[derive(Parser, Debug)]
#[command(name = "zbound", version, about = "Upper bounds on Zarankiewicz numbers z(m,n;s,t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: csv, md or json (default: md for verify, csv otherwise).
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate upper bounds for one parameter set.
    Bound(BoundArgs),
    /// Improved-bound table over an (m, n) grid.
    Table(TableArgs),
    /// Match counts between the programs and the closed form.
    Survey(SurveyArgs),
    /// Improvement of the closed form over Roman's bound as n varies.
    Curve(CurveArgs),
    /// Exact value by exhaustive search (tiny parameters only).
    Oracle(OracleArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Params {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
}

impl Params {
    fn zparams(&self) -> Result<ZParams, Error> {
        ZParams::new(self.m, self.n, self.s, self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    Roman,
    RomanK,
    Closed,
    ClosedK,
    Kst,
    Reiman,
    LpRoman,
    LpStar,
    LpStarK,
    LpFull,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    /// The k for roman-k, closed-k and lp-star-k.
    #[arg(long)]
    k: Option<u32>,
    /// Also write the solved programs in LP text format.
    #[arg(long)]
    dump_lp: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
    /// Row range, e.g. 10-16.
    #[arg(long, value_parser = parse_range)]
    m: RangeInclusive<u32>,
    /// Column range, e.g. 17-23.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Omit both s and t to run every published pair.
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Largest m and n.
    #[arg(long, default_value_t = 60)]
    max: u32,
    #[arg(long, default_value = "floored")]
    convention: Convention,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    m: u32,
    /// Sample range for n, e.g. 1-200 or 5/2-40.
    #[arg(long, value_parser = parse_rational_range)]
    n: (BigRational, BigRational),
    #[arg(long, default_value = "1/4", value_parser = parse_rational_arg)]
    step: BigRational,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    params: Params,
    /// Stop after this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Search beyond the m*n guard.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    Beta,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only these suites (repeatable).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: Vec<String>,
    #[arg(long, default_value_t = VerifyConfig::default().random_lps)]
    random_lps: usize,
    #[arg(long, default_value_t = VerifyConfig::default().hypergraphs)]
    hypergraphs: usize,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn parse_range(text: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = text.split_once('-').unwrap_or((text, text));
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {text:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in {text:?}"))?;
    if a > b {
        return Err(format!("empty range {text:?}"));
    }
    Ok(a..=b)
}

fn parse_rational_arg(text: &str) -> Result<BigRational, String> {
    parse_rational(text).ok_or_else(|| format!("not a rational number: {text:?}"))
}

fn parse_rational_range(text: &str) -> Result<(BigRational, BigRational), String> {
    let (a, b) = text.split_once('-').ok_or_else(|| format!("expected FROM-TO, got {text:?}"))?;
    Ok((parse_rational_arg(a)?, parse_rational_arg(b)?))
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::OutOfRange(_) | Error::EmptyRange(_) | Error::Intractable(_) => {
                EXIT_USAGE
            }
            Error::BudgetExhausted { .. } => EXIT_BUDGET,
            _ => EXIT_INVARIANT,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::new(EXIT_INVARIANT, format!("i/o error: {e}"))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn lp_variant(method: MethodArg, k: Option<u32>) -> Option<Variant> {
    match method {
        MethodArg::LpRoman => Some(Variant::Roman),
        MethodArg::LpStar => Some(Variant::EStar),
        MethodArg::LpStarK => k.map(Variant::EStarK),
        MethodArg::LpFull => Some(Variant::EFull),
        _ => None,
    }
}

fn need_k(k: Option<u32>, method: MethodArg) -> Result<u32, Failure> {
    k.ok_or_else(|| Failure::new(EXIT_USAGE, format!("--method {method:?} requires --k")))
}

fn cmd_bound(cli: &Cli, args: &BoundArgs) -> Result<String, Failure> {
    let p = args.params.zparams()?;
    let mut results: Vec<BoundResult> = Vec::new();
    let mut programs: Vec<Variant> = Vec::new();
    match args.method {
        MethodArg::All => {
            results.push(roman_best(&p));
            match closed_form_best(&p) {
                Ok(b) => results.push(b),
                Err(Error::EmptyRange(msg)) => eprintln!("closed form skipped: {msg}"),
                Err(e) => return Err(e.into()),
            }
            for v in [Variant::EStar, Variant::EFull] {
                results.push(opt_bound(&p, v)?);
                programs.push(v);
            }
            results.push(kst_bound(&p));
            if p.s == 2 {
                results.push(reiman_bound(&p)?);
            }
        }
        MethodArg::Roman => results.push(roman_best(&p)),
        MethodArg::RomanK => results.push(roman_bound_k(&p, need_k(args.k, args.method)?)?),
        MethodArg::Closed => results.push(closed_form_best(&p)?),
        MethodArg::ClosedK => results.push(closed_form_bk(&p, need_k(args.k, args.method)?)?),
        MethodArg::Kst => results.push(kst_bound(&p)),
        MethodArg::Reiman => results.push(reiman_bound(&p)?),
        MethodArg::LpRoman | MethodArg::LpStar | MethodArg::LpStarK | MethodArg::LpFull => {
            if args.method == MethodArg::LpStarK {
                need_k(args.k, args.method)?;
            }
            let v = lp_variant(args.method, args.k).expect("lp method");
            results.push(opt_bound(&p, v)?);
            programs.push(v);
        }
    }
    if let Some(path) = &args.dump_lp {
        let mut text = String::new();
        for v in &programs {
            text.push_str(&format!("\\ {v:?} for z{p}\n"));
            text.push_str(&write_lp(&build_program(&p, *v)?));
        }
        fs::write(path, text)?;
    }
    for b in &results {
        if let Some(q) = b.rational() {
            eprintln!("{}: {} (floor {})", b.method, fmt_rational(q), b.floor_value);
        }
    }
    Ok(render_bounds(&p, &results, cli.format.unwrap_or(Format::Csv)))
}

fn cmd_table(cli: &Cli, args: &TableArgs) -> Result<String, Failure> {
    let cells = with_jobs(cli.jobs, || improvement_table(args.s, args.t, args.m.clone(), args.n.clone()))?;
    let by2 = cells.iter().filter(|c| c.improvement == 2).count();
    let by3 = cells.iter().filter(|c| c.improvement >= 3).count();
    let full = cells.iter().filter(|c| c.needs_full_lp).count();
    eprintln!(
        "(s,t)=({},{}): {} improved cells, {by2} by 2, {by3} by 3 or more, {full} need the full program",
        args.s,
        args.t,
        cells.len()
    );
    let layout = TableLayout { s: args.s, t: args.t, m_range: args.m.clone(), n_range: args.n.clone() };
    Ok(render_cells(&cells, cli.format.unwrap_or(Format::Csv), &layout))
}

fn cmd_survey(cli: &Cli, args: &SurveyArgs) -> Result<String, Failure> {
    let pairs = match (args.s, args.t) {
        (Some(s), Some(t)) => vec![(s, t)],
        (None, None) => SURVEY_PAIRS.to_vec(),
        _ => return Err(Failure::new(EXIT_USAGE, "give both --s and --t, or neither")),
    };
    let mut rows = Vec::new();
    for (s, t) in pairs {
        let started = Instant::now();
        let row = with_jobs(cli.jobs, || match_counts(s, t, args.max, args.max, args.convention))?;
        eprintln!(
            "(s,t)=({s},{t}): {} cases, {} star matches, {} thm matches [{}] in {:.1?}",
            row.total_cases,
            row.star_matches,
            row.thm_matches,
            format!("{:?}", args.convention).to_lowercase(),
            started.elapsed()
        );
        rows.push(row);
    }
    Ok(render_match_rows(&rows, cli.format.unwrap_or(Format::Csv)))
}

fn cmd_curve(cli: &Cli, args: &CurveArgs) -> Result<String, Failure> {
    let (from, to) = &args.n;
    let points = improvement_curve(args.s, args.t, args.m, from, to, &args.step)?;
    let roman = points.iter().filter(|p| p.roman_point).count();
    let peak = points.iter().max_by(|a, b| a.delta_exact.cmp(&b.delta_exact));
    if let Some(peak) = peak {
        eprintln!(
            "{} samples, {roman} Roman points, largest improvement {} at n = {}",
            points.len(),
            fmt_rational(&peak.delta_exact),
            fmt_rational(&peak.n)
        );
    }
    Ok(render_curve(args.s, args.t, args.m, &points, cli.format.unwrap_or(Format::Csv)))
}

fn cmd_oracle(cli: &Cli, args: &OracleArgs) -> Result<String, Failure> {
    let p = args.params.zparams()?;
    let search = ExactSearch { budget: args.budget, allow_large: args.allow_large };
    let z = match exact_z(&p, search) {
        Ok(z) => z,
        Err(Error::BudgetExhausted { nodes, best }) => {
            return Err(Failure::new(
                EXIT_BUDGET,
                format!("node budget exhausted after {nodes} nodes; z{p} >= {best}"),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let mut uppers = vec![roman_best(&p), opt_bound(&p, Variant::EFull)?, kst_bound(&p)];
    if let Ok(b) = closed_form_best(&p) {
        uppers.push(b);
    }
    if p.s == 2 {
        uppers.push(reiman_bound(&p)?);
    }
    for b in &uppers {
        if b.floor_value < z.into() {
            return Err(Failure::new(
                EXIT_INVARIANT,
                format!("z{p} = {z} exceeds {} = {}", b.method, b.floor_value),
            ));
        }
    }
    eprintln!("z{p} = {z}, within all {} upper bounds", uppers.len());
    Ok(render_oracle(&p, z, cli.format.unwrap_or(Format::Csv)))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<String, Failure> {
    let cfg = VerifyConfig {
        seed: cli.seed,
        random_lps: args.random_lps,
        hypergraphs: args.hypergraphs,
        fault: args.inject_fault.map(|FaultArg::Beta| Fault::Beta),
    };
    let names: Vec<&str> = if args.suite.is_empty() {
        SUITES.to_vec()
    } else {
        args.suite.iter().map(String::as_str).collect()
    };
    let mut reports = Vec::new();
    for name in names {
        let started = Instant::now();
        reports.push(run_suite(name, &cfg)?);
        eprintln!("{name}: {:.1?}", started.elapsed());
    }
    let text = render_verify(&reports, cli.format.unwrap_or(Format::Markdown));
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(text)
    } else {
        emit(&cli.out, &text)?;
        Err(Failure::new(EXIT_INVARIANT, format!("failed suites: {}", failed.join(", "))))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let text = match &cli.command {
        Command::Bound(a) => cmd_bound(cli, a)?,
        Command::Table(a) => cmd_table(cli, a)?,
        Command::Survey(a) => cmd_survey(cli, a)?,
        Command::Curve(a) => cmd_curve(cli, a)?,
        Command::Oracle(a) => cmd_oracle(cli, a)?,
        Command::Verify(a) => cmd_verify(cli, a)?,
    };
    emit(&cli.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli);
    eprintln!("elapsed {:.2?}", started.elapsed());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
