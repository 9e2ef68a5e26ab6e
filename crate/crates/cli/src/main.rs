use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use bnineq::harness::{run_suite, sharpness_scan, FixedParams, OutputFormat};
use bnineq::ineq::Case;
use bnineq::{Evaluator, ParamMode, StatementId, SuiteConfig, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "bnineq",
    version,
    about = "Randomised verification of B_n-operator polynomial inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the random suite and write a report.
    Verify(VerifyArgs),
    /// Evaluate a single case read from JSON (e.g. a report's `worst.case`).
    Case {
        /// Path to the case JSON, or `-` for stdin.
        #[arg(long)]
        input: PathBuf,
        /// Relative slack below which a result is a violation.
        #[arg(long, default_value_t = bnineq::ineq::DEFAULT_VIOLATION_TOL)]
        tol: f64,
    },
    /// Measure the gap between the sides over a statement's equality family.
    Sharpness {
        #[arg(long)]
        statement: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree `N` or range `A..B`.
        #[arg(long, default_value = "1..8")]
        n: String,
    },
    /// List statement ids with a short description.
    ListStatements,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Interior,
    Boundary,
    Mixed,
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement id; repeatable. `all` selects every statement, `main` the
    /// twelve main ones (the default), `classic` the classical ones.
    #[arg(long = "statement", value_name = "ID")]
    statements: Vec<String>,
    /// Degree `N` or range `A..B` (inclusive).
    #[arg(long, default_value = "1..8")]
    n: String,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long = "R", value_name = "R")]
    big_r: Option<f64>,
    /// Fixed alpha as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Fixed beta as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Cases per statement.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative slack below which a result is a violation.
    #[arg(long, default_value_t = bnineq::ineq::DEFAULT_VIOLATION_TOL)]
    tol: f64,
    /// Tolerance of the circle extremum search.
    #[arg(long, default_value_t = bnineq::circle::DEFAULT_TOL)]
    extremum_tol: f64,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Mixed)]
    mode: Mode,
    /// Probability of drawing from a statement's equality family.
    #[arg(long, default_value_t = 0.2)]
    extremal_fraction: f64,
    /// Extremal cases per statement in the sharpness section.
    #[arg(long, default_value_t = 10)]
    sharpness_cases: usize,
    /// Multiply every right-hand side (values below 1 break the bounds on
    /// purpose, to check that violations are caught).
    #[arg(long, default_value_t = 1.0)]
    rhs_scale: f64,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad degree `{t}`: {e}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse(a)?, parse(b)?))
        }
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let re = re
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad real part `{re}`: {e}"))?;
    let im = im
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad imaginary part `{im}`: {e}"))?;
    Ok(C64::new(re, im))
}

fn parse_statements(names: &[String]) -> Result<Vec<StatementId>, String> {
    if names.is_empty() {
        return Ok(StatementId::MAIN.to_vec());
    }
    let mut ids = Vec::new();
    for name in names.iter().flat_map(|s| s.split(',')) {
        let group: Vec<StatementId> = match name.trim().to_ascii_lowercase().as_str() {
            "all" => StatementId::all().collect(),
            "main" => StatementId::MAIN.to_vec(),
            "classic" => StatementId::CLASSIC.to_vec(),
            other => vec![other.parse::<StatementId>().map_err(|e| e.to_string())?],
        };
        for id in group {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    Ok(ids)
}

fn verify_config(args: &VerifyArgs) -> Result<SuiteConfig, String> {
    let (n_min, n_max) = parse_degrees(&args.n)?;
    let fixed = FixedParams {
        k: args.k,
        r: args.r,
        big_r: args.big_r,
        alpha: args.alpha.as_deref().map(parse_complex).transpose()?,
        beta: args.beta.as_deref().map(parse_complex).transpose()?,
    };
    let config = SuiteConfig {
        statements: parse_statements(&args.statements)?,
        n_min,
        n_max,
        cases: args.cases,
        seed: args.seed,
        violation_tol: args.tol,
        extremum_tol: args.extremum_tol,
        mode: match args.mode {
            Mode::Interior => ParamMode::Interior,
            Mode::Boundary => ParamMode::Boundary,
            Mode::Mixed => ParamMode::Mixed,
        },
        fixed,
        extremal_fraction: args.extremal_fraction,
        sharpness_cases: args.sharpness_cases,
        rhs_scale: args.rhs_scale,
        output: args.out.clone(),
        format: match args.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        },
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let config = match verify_config(&args) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if config.output.is_none() {
        let printed = match config.format {
            OutputFormat::Json => report.to_json().map(|s| println!("{s}")),
            OutputFormat::Csv => report.write_csv(std::io::stdout()),
        };
        if let Err(e) = printed {
            return usage(e);
        }
    }
    for s in &report.statements {
        let worst = s.worst.as_ref().map_or(f64::NAN, |w| w.min_rel_slack);
        eprintln!(
            "{:<4} run {:>6}  passed {:>6}  violations {:>5}  errors {:>4}  worst rel slack {:+.3e}",
            s.statement.as_str(),
            s.run,
            s.passed,
            s.violations,
            s.errors,
            worst
        );
        if let Some(e) = &s.first_error {
            eprintln!("     first error: {e}");
        }
    }
    for s in &report.sharpness {
        eprintln!(
            "sharpness {:<4} {} cases, max gap {:.3e}",
            s.statement.as_str(),
            s.cases,
            s.max_rel_gap
        );
    }
    eprintln!("wall clock {:.2}s", report.wall_clock.as_secs_f64());
    if report.total_violations() > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn case(input: PathBuf, tol: f64) -> ExitCode {
    let text = match read_input(&input) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", input.display())),
    };
    let case: Case = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return usage(format!("invalid case: {e}")),
    };
    let results = match Evaluator::default().evaluate(&case) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match serde_json::to_string_pretty(&results) {
        Ok(s) => println!("{s}"),
        Err(e) => return usage(e),
    }
    if results.iter().any(|r| r.is_violation(tol)) {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}

fn sharpness(statement: String, cases: usize, seed: u64, n: String) -> ExitCode {
    let id = match statement.parse::<StatementId>() {
        Ok(id) => id,
        Err(e) => return usage(e),
    };
    let (n_min, n_max) = match parse_degrees(&n) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let config = SuiteConfig {
        statements: vec![id],
        n_min,
        n_max,
        seed,
        ..SuiteConfig::default()
    };
    if let Err(e) = config.validate() {
        return usage(e);
    }
    match sharpness_scan(id, cases, seed, &config)
        .and_then(|entry| Ok(serde_json::to_string_pretty(&entry)?))
    {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn list_statements() -> ExitCode {
    for id in StatementId::all() {
        let family = id.extremal_family().unwrap_or("-");
        println!(
            "{:<4} {}  [equality: {family}]",
            id.as_str(),
            id.description()
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Case { input, tol } => case(input, tol),
        Command::Sharpness {
            statement,
            cases,
            seed,
            n,
        } => sharpness(statement, cases, seed, n),
        Command::ListStatements => list_statements(),
    }
}
