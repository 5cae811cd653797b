use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use equichar::cli::{builtin, parse_input, render, run_analyze, OutputFormat, RunOptions, BUILTINS};
use equichar::oracle::point_cap;

#[derive(Parser)]
#[command(name = "equichar", version, about = "Equivariant quasi-polynomials of finite groups acting on ℤ^ℓ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify multiplicity quasi-polynomials.
    Analyze(AnalyzeArgs),
    /// List the built-in examples.
    Builtins,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["builtin", "input"])))]
struct AnalyzeArgs {
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Check q = 1..=N (default max(24, 4ñ)).
    #[arg(long = "qmax", value_name = "N")]
    q_max: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Skip the brute-force oracle.
    #[arg(long)]
    no_verify: bool,
    #[arg(long, value_name = "N")]
    max_order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
            Format::Latex => OutputFormat::Latex,
        }
    }
}

fn analyze(args: AnalyzeArgs) -> ExitCode {
    let spec = match (&args.builtin, &args.input) {
        (Some(name), _) => builtin(name),
        (None, Some(path)) => parse_input(path),
        (None, None) => unreachable!("clap enforces a source"),
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cli: {e}");
            return ExitCode::from(2);
        }
    };
    let options = RunOptions { q_max: args.q_max, max_order: args.max_order, verify: !args.no_verify, point_cap: point_cap() };
    let report = match run_analyze(&spec, &options) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = args.format.map(OutputFormat::from).or(spec.options.format).unwrap_or_default();
    print!("{}", render(&report, format));
    if report.all_passed {
        ExitCode::SUCCESS
    } else {
        for v in report.verdicts.iter().filter(|v| !v.passed) {
            eprintln!("FAIL {}: {}", v.check, v.detail);
        }
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Builtins => {
            for b in BUILTINS {
                println!("{:<12} {}", b.name, b.description);
            }
            ExitCode::SUCCESS
        }
    }
}
