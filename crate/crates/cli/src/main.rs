use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use tvalues_cli::eval::{default_precision, PRECISION_ENV};
use tvalues_cli::render::coefficient_row;
use tvalues_cli::{
    evaluate, render_coeffs, render_table, run_suite, table_rows, Bounds, CliError, Format, Suite,
};

#[derive(Parser)]
#[command(name = "tvalues", version, about = "Exact sums T(2n,d) of multiple t-values at even arguments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print T(2n,d) = c * pi^(2n) for all 1 <= d <= n <= max-n
    Table {
        #[arg(long)]
        max_n: u32,
        /// Keep only this depth
        #[arg(long)]
        depth: Option<u32>,
        /// json, csv or latex
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: Format,
    },
    /// Print the coefficient row expressing T(2n,d) through t(2j)t(2n-2j)
    Coeffs {
        #[arg(long)]
        depth: u32,
        /// json, csv or latex
        #[arg(long, default_value = "latex", value_parser = parse_format)]
        format: Format,
    },
    /// Run a verification suite and print its report as JSON
    Verify {
        /// closed-forms, genfunc, depth-sum, bernoulli-euler, symmetric, oracle or all
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Largest n (defaults: 30 exact, 15 bernoulli-euler, 8 symmetric, 5 oracle)
        #[arg(long)]
        max_n: Option<u32>,
        /// Largest depth for bernoulli-euler (default 40)
        #[arg(long)]
        max_d: Option<u32>,
        /// Series terms for the oracle suite
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
        /// Perturb the expected value of one case id (exercises the failure path)
        #[arg(long, hide = true)]
        inject_failure: Option<String>,
    },
    /// Evaluate t(s_1,...,s_d) numerically with an error bound
    Eval {
        /// Comma-separated arguments, outermost first
        #[arg(long = "t", value_delimiter = ',', required = true)]
        args: Vec<u32>,
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
        /// Decimal digits, 1..=200 (default 50, or $TVALUES_PRECISION)
        #[arg(long)]
        precision: Option<u32>,
    },
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, CliError> {
    Suite::parse(s)
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Table { max_n, depth, format } => {
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            Ok((render_table(&table_rows(max_n, depth)?, format), 0))
        }
        Command::Coeffs { depth, format } => {
            if depth == 0 {
                return Err(CliError::Usage("--depth must be at least 1".into()));
            }
            Ok((render_coeffs(&coefficient_row(depth)?, format), 0))
        }
        Command::Verify {
            suite,
            max_n,
            max_d,
            terms,
            inject_failure,
        } => {
            let bounds = Bounds {
                max_n,
                max_d,
                terms,
                inject_failure,
            };
            let report = run_suite(suite, &bounds)?;
            eprintln!(
                "{}: {}/{} passed in {:.1} ms",
                report.suite, report.summary.passed, report.summary.total, report.wall_time_ms
            );
            let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
            Ok((out, report.exit_code()))
        }
        Command::Eval { args, terms, precision } => {
            let digits = match precision {
                Some(p) => p,
                None => default_precision()?,
            };
            let start = Instant::now();
            let e = evaluate(&args, terms, digits)?;
            eprintln!(
                "elapsed = {:.3} s (precision {digits} digits{})",
                start.elapsed().as_secs_f64(),
                if precision.is_none() { format!(", default or ${PRECISION_ENV}") } else { String::new() }
            );
            Ok((e.render(), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
