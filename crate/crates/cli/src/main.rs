//! Command-line front end: run scenario files, reproduce the collective
//! readout comparison, print weak values and regime reports.
//!
//! Exit codes: 0 success, 1 validation error (bad scenario or parameters),
//! 2 runtime error (e.g. null post-selection).

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use wvsim_core::pointer::GaussianSpec;
use wvsim_core::report::{self, format_num, Summary};
use wvsim_core::scenario::{parse_axis_spec, parse_scenario};
use wvsim_core::spin::{eigenstate, spin_along, PrePostSelection, Sign};
use wvsim_core::validity::regime_check;
use wvsim_core::{Error, protocols::Scenario};

#[derive(Parser)]
#[command(name = "wvsim", version, about = "Pre-/post-selected weak measurement simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write summary.txt plus protocol CSVs.
    Run {
        /// Path to a `key = value` scenario file.
        scenario_file: PathBuf,
        /// Output directory; overrides the scenario's output_dir (default ".").
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the exact collective pointer state with its weak-value
    /// approximation and emit figure2.csv.
    Figure2 {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the complex weak value for a pre/post selection and observable.
    WeakValue {
        #[arg(long)]
        pre: String,
        #[arg(long)]
        post: String,
        #[arg(long)]
        observable: String,
    },
    /// Print the weak-value-approximation regime report.
    Validity {
        /// Uniform weak value ᾱ_w.
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_validation() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { scenario_file, out } => {
            let text = std::fs::read_to_string(&scenario_file)?;
            let scenario = match parse_scenario(&text) {
                Ok(sc) => sc,
                Err(diagnostics) => {
                    for d in &diagnostics {
                        eprintln!("{}: {d}", scenario_file.display());
                    }
                    return Err(Error::InvalidParameter(format!(
                        "{} problem(s) in {}",
                        diagnostics.len(),
                        scenario_file.display()
                    )));
                }
            };
            let out_dir = out
                .or_else(|| scenario.output_dir.clone())
                .unwrap_or_else(|| PathBuf::from("."));
            let summary = report::run_scenario(&scenario, &out_dir)?;
            print!("{}", summary.render());
            Ok(())
        }
        Command::Figure2 { n, lambda, seed, out } => {
            let summary = report::figure2(n, lambda, seed, &out)?;
            print!("{}", summary.render());
            Ok(())
        }
        Command::WeakValue { pre, post, observable } => {
            let sel = PrePostSelection {
                pre: parse_state(&pre)?,
                post: parse_state(&post)?,
            };
            let (obs_axis, obs_sign) = parse_axis(&observable)?;
            let obs_axis = match obs_sign {
                Sign::Plus => obs_axis,
                Sign::Minus => obs_axis.flipped(),
            };
            let wv = wvsim_core::spin::weak_value(&sel, &spin_along(&obs_axis))?;
            println!("weak_value_re = {}", format_num(wv.re));
            println!("weak_value_im = {}", format_num(wv.im));
            Ok(())
        }
        Command::Validity { alpha, lambda, n, delta } => {
            if lambda < 0.0 || n < 1 {
                return Err(Error::InvalidParameter(
                    "validity requires lambda ≥ 0 and n ≥ 1".into(),
                ));
            }
            let spec = GaussianSpec::new(0.0, delta)?;
            let mut scenario = Scenario::base(wvsim_core::protocols::Protocol::Validity);
            scenario.lambda = lambda;
            scenario.particle_count = n;
            scenario.pointer_spread = delta;
            let grid = scenario.auto_grid(1024)?;
            let report = regime_check(alpha, lambda, n, &spec, &grid)?;
            let mut summary = Summary::new();
            summary.push_num("alpha_w", alpha);
            report::push_validity(&mut summary, &report, n, lambda);
            print!("{}", summary.render());
            Ok(())
        }
    }
}

fn parse_axis(text: &str) -> Result<(wvsim_core::spin::BlochAxis, Sign), Error> {
    parse_axis_spec(text).map_err(Error::InvalidParameter)
}

fn parse_state(text: &str) -> Result<wvsim_core::spin::SpinState, Error> {
    let (axis, sign) = parse_axis(text)?;
    Ok(eigenstate(&axis, sign))
}
