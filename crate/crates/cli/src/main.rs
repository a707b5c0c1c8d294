use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use diffn_cli::config::{AlphaArg, SuiteConfig, SuiteId};
use diffn_cli::report::VerificationReport;
use diffn_cli::{suites, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Numerical verification of difference-function and convex-body
/// inequalities on grids.
#[derive(Parser)]
#[command(name = "verify", version, about)]
struct Args {
    /// Suite name, or `all` to run every suite.
    #[arg(default_value = "all")]
    suite: String,

    /// Restrict a suite to one dimension (1 to 3) where it applies.
    #[arg(long)]
    dim: Option<usize>,

    /// Override the per-axis node count of the generated grids.
    #[arg(long)]
    nodes: Option<usize>,

    /// Override the half-width of the sampling boxes.
    #[arg(long)]
    halfwidth: Option<f64>,

    /// Concavity exponent: `0`, a negative number, or `-inf`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,

    /// Seed for the deterministic instance generators.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Relative tolerance for the bound checks.
    #[arg(long, default_value_t = 0.02)]
    tol: f64,

    /// Write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format for `--out`.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print the suite names and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for id in SuiteId::all() {
            println!("{}", id.name());
        }
        return ExitCode::SUCCESS;
    }
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<bool, CliError> {
    let alpha = args.alpha.as_deref().map(AlphaArg::parse).transpose()?;
    let cfg = SuiteConfig {
        dim: args.dim,
        nodes: args.nodes,
        halfwidth: args.halfwidth,
        alpha,
        seed: args.seed,
        tol: args.tol,
    };
    let ids: Vec<SuiteId> = if args.suite == "all" {
        SuiteId::all().to_vec()
    } else {
        let id = SuiteId::parse(&args.suite)
            .ok_or_else(|| CliError::UnknownSuite(args.suite.clone()))?;
        vec![id]
    };

    let mut reports = Vec::new();
    let mut all_pass = true;
    for id in ids {
        let report = suites::run(id, &cfg)?;
        print_report(&report);
        all_pass &= report.passed();
        reports.push(report);
    }

    if let Some(path) = &args.out {
        let text = match args.format {
            Format::Json => {
                if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    let parts: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
                    format!("[\n{}\n]\n", parts.join(",\n"))
                }
            }
            Format::Csv => {
                let mut text = String::new();
                for (i, r) in reports.iter().enumerate() {
                    let csv = r.to_csv();
                    if i == 0 {
                        text.push_str(&csv);
                    } else if let Some((_, rows)) = csv.split_once('\n') {
                        text.push_str(rows);
                    }
                }
                text
            }
        };
        std::fs::write(path, text).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(all_pass)
}

fn print_report(report: &VerificationReport) {
    for case in &report.cases {
        let mark = if case.pass { "PASS" } else { "FAIL" };
        println!(
            "[{mark}] {} :: {} :: value {:.9} bound {:.9} slack {:+.2e} ({} ms)",
            report.suite, case.id, case.ratio, case.bound, case.slack, case.ms
        );
    }
    println!(
        "suite {}: {}/{} cases pass",
        report.suite,
        report.summary.passed,
        report.summary.passed + report.summary.failed
    );
}
