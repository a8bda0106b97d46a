use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dpcheck::dspace::{contact_class, reduce_dpath};
use dpcheck::freegroup::{truncate, Sign, Word};
use dpcheck::hawaiian::truncation;
use dpcheck::parse::{parse_dpath, parse_hexpr, parse_welement, parse_word, HTerm};
use dpcheck::wspace::{in_n0, phi, support};
use dpcheck::{run_suite, Suite, SuiteParams, VerificationReport};

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "dpcheck",
    version,
    about = "Verify dense transfinite product identities at finite truncation levels",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word or path and report its invariants.
    Eval(EvalArgs),
}

#[derive(Args)]
struct RunArgs {
    /// factorization-lemma, n0, fold, nd-example, diameter or oracles
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    max_level: Option<u32>,
    #[arg(long)]
    samples: Option<u64>,
    /// Required by n0, nd-example and oracles.
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points per arc in the diameter suite.
    #[arg(long)]
    grid: Option<u32>,
    /// Write the full JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads (default: number of processors).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1024))]
    jobs: Option<u32>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Free,
    H,
    W,
    D,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    space: Space,
    /// Truncation level for catalog elements (space h only).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=65536))]
    level: Option<u32>,
    /// The expression; several arguments are joined with spaces.
    #[arg(required = true, allow_hyphen_values = true)]
    expr: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Eval(args)) => eval(&args),
        None => run(&cli.run),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(args: &RunArgs) -> Result<ExitCode, String> {
    let name = args
        .suite
        .as_deref()
        .ok_or("either --suite <name> or the eval subcommand is required")?;
    let suite: Suite = name.parse().map_err(|e| format!("{e}"))?;
    let params = SuiteParams {
        max_n: args.max_n,
        max_level: args.max_level,
        samples: args.samples,
        seed: args.seed,
        grid: args.grid,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0) as usize)
        .build()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut report: VerificationReport = pool
        .install(|| run_suite(suite, &params))
        .map_err(|e| e.to_string())?;
    if args.timing {
        report.elapsed = Some(start.elapsed());
    }
    println!("{}", report.summary());
    if let Some(path) = &args.report {
        fs::write(path, report.to_json() + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn eval(args: &EvalArgs) -> Result<ExitCode, String> {
    let src = args.expr.join(" ");
    let err = |e: dpcheck::ParseError| e.to_string();
    if args.level.is_some() && !matches!(args.space, Space::H) {
        return Err("--level only applies to --space h".into());
    }
    match args.space {
        Space::Free => println!("{}", parse_word(&src).map_err(err)?),
        Space::H => {
            let terms = parse_hexpr(&src).map_err(err)?;
            let m = args.level.ok_or("--space h needs --level <m>")?;
            println!("{}", h_truncation(&terms, m));
        }
        Space::W => {
            let e = parse_welement(&src).map_err(err)?;
            println!("{e}");
            println!("support={}", support(&phi(&e)));
            println!("N0={}", in_n0(&e));
        }
        Space::D => {
            let p = parse_dpath(&src).map_err(err)?;
            println!("{}", reduce_dpath(&p));
            println!("contact={}", contact_class(&p));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn h_truncation(terms: &[HTerm], m: u32) -> Word {
    terms.iter().fold(Word::identity(), |acc, t| {
        let w = match *t {
            HTerm::Catalog(e, Sign::Pos) => truncation(e, m),
            HTerm::Catalog(e, Sign::Neg) => truncation(e, m).inverse(),
            HTerm::Letter(l) => truncate(&Word::new([l]), m),
        };
        acc.concat(&w)
    })
}
