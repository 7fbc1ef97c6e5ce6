use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use yeefdtd::antenna::{reference, PermittivityForm};
use yeefdtd::validate::Suite;
use yeefdtd_cli::config::{AntennaConfig, ReportFormat, DEFAULT_TOLERANCE};
use yeefdtd_cli::run::{antenna_reports, run, run_suites, validation_text};
use yeefdtd_cli::{RunError, ScenarioConfig};

const DEFAULT_OUT: &str = "yeefdtd-out";

#[derive(Parser)]
#[command(
    name = "yeefdtd",
    version,
    about = "FDTD electromagnetic solvers and validation suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Output directory; overrides the scenario's `dir`.
        #[arg(long, env = "YEEFDTD_OUT")]
        out: Option<PathBuf>,
        /// Worker threads for the field sweeps.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
    /// Run oracle-comparison suites and print one line per criterion.
    Validate {
        /// Suite to run; repeat for several. All suites when omitted.
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print a patch-antenna design table and the published-table comparison.
    Antenna {
        #[arg(long, default_value_t = reference::F0)]
        f0: f64,
        #[arg(long, default_value_t = reference::EPS_R)]
        eps_r: f64,
        #[arg(long, default_value_t = reference::H)]
        h: f64,
        #[arg(long, default_value_t = reference::X_FEED)]
        x_feed: f64,
        /// Use the effective-permittivity formula exactly as printed.
        #[arg(long)]
        printed: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: yeefdtd::FdtdError| e.to_string())
}

fn set_threads(n: Option<usize>) -> Result<(), String> {
    match n {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string()),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scenario,
            out,
            threads,
            quiet,
        } => {
            if let Err(e) = set_threads(threads) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ScenarioConfig::parse_file(&scenario)
                .map_err(RunError::from)
                .and_then(|cfg| {
                    let dir = out
                        .or_else(|| cfg.out_dir.clone())
                        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
                    let summary = run(&cfg, &dir)?;
                    if !quiet {
                        print!("{}", summary.console);
                        println!("wrote {} files to {}", summary.files.len(), dir.display());
                    }
                    Ok(())
                })
        }
        Command::Validate { suites, threads } => {
            if let Err(e) = set_threads(threads) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites
            };
            run_suites(&suites).and_then(|reports| {
                print!("{}", validation_text(&reports));
                match reports.iter().filter(|r| !r.passed()).count() {
                    0 => Ok(()),
                    failed => Err(RunError::ValidationFailed { failed }),
                }
            })
        }
        Command::Antenna {
            f0,
            eps_r,
            h,
            x_feed,
            printed,
            format,
        } => {
            let cfg = AntennaConfig {
                f0,
                eps_r,
                h,
                x_feed,
                form: if printed {
                    PermittivityForm::Printed
                } else {
                    PermittivityForm::InverseRoot
                },
                tolerance: DEFAULT_TOLERANCE,
                format: match format {
                    Format::Csv => ReportFormat::Csv,
                    Format::Text => ReportFormat::Text,
                },
            };
            antenna_reports(&cfg).map(|(table, cmp)| print!("{table}\n{cmp}"))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
