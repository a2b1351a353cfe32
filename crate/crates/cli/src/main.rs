//! secperf: secrecy-performance sweeps for the correlated Rayleigh wiretap
//! channel with transmitter side information.
//!
//! Exit codes: 0 success, 2 configuration error, 3 oracle-discrepancy gate
//! failure.

use clap::{Parser, Subcommand};
use secperf_core::metrics::Method;
use secperf_core::sweep::{self, SweepSpec, SweepTable};
use std::path::PathBuf;
use std::process::ExitCode;

mod config;

/// Tolerance of the closed-form vs quadrature CI gate.
const GATE_TOL: f64 = 1e-5;

#[derive(Parser)]
#[command(name = "secperf", version, about = "Secrecy performance of correlated Rayleigh wiretap channels with side information", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep {
        /// Flat key = value sweep description.
        #[arg(long)]
        config: PathBuf,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's Monte-Carlo sample count.
        #[arg(long)]
        mc_n: Option<u64>,
        /// Run the closed-form vs quadrature gate only; no CSV output.
        #[arg(long)]
        validate: bool,
    },
    /// Run one of the shipped figure presets (fig2..fig6).
    Figure {
        /// Preset name: fig2, fig3, fig4, fig5, fig6.
        name: String,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the preset seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the preset Monte-Carlo sample count.
        #[arg(long)]
        mc_n: Option<u64>,
        /// Run the closed-form vs quadrature gate only; no CSV output.
        #[arg(long)]
        validate: bool,
    },
}

fn apply_overrides(spec: &mut SweepSpec, seed: Option<u64>, mc_n: Option<u64>) {
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(n) = mc_n {
        spec.mc_n = n;
    }
}

/// In validate mode the sweep is rerun with closed form + quadrature only;
/// Monte-Carlo adds nothing to the gate and would dominate the runtime.
fn validate_spec(mut spec: SweepSpec) -> Result<(), ExitCode> {
    spec.methods = vec![Method::ClosedForm, Method::Quadrature];
    let table = run_or_config_error(&spec)?;
    let violations = table.gate_violations(GATE_TOL);
    let rows: usize = table.sections.iter().map(|(_, r)| r.len()).sum();
    if violations.is_empty() {
        eprintln!(
            "validate {}: {} rows, closed-form vs quadrature within {GATE_TOL:.0e}",
            spec.name, rows
        );
        Ok(())
    } else {
        for v in &violations {
            eprintln!("gate violation: {v}");
        }
        eprintln!(
            "validate {}: {} of {} comparisons failed",
            spec.name,
            violations.len(),
            rows
        );
        Err(ExitCode::from(3))
    }
}

fn run_or_config_error(spec: &SweepSpec) -> Result<SweepTable, ExitCode> {
    sweep::run_sweep(spec).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn emit(table: &SweepTable, out: Option<PathBuf>) -> Result<(), ExitCode> {
    let csv = table.to_csv();
    match out {
        Some(path) => std::fs::write(&path, csv).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(2)
        }),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run(spec: SweepSpec, out: Option<PathBuf>, validate: bool) -> ExitCode {
    if validate {
        return match validate_spec(spec) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        };
    }
    let table = match run_or_config_error(&spec) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if let Err(code) = emit(&table, out) {
        return code;
    }
    // When a run carries both closed form and quadrature, their agreement is
    // enforced: an unflagged discrepancy beyond the gate tolerance is a bug.
    if spec.methods.contains(&Method::ClosedForm) && spec.methods.contains(&Method::Quadrature) {
        let violations = table.gate_violations(GATE_TOL);
        if !violations.is_empty() {
            for v in &violations {
                eprintln!("gate violation: {v}");
            }
            return ExitCode::from(3);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep {
            config,
            out,
            seed,
            mc_n,
            validate,
        } => {
            let mut spec = match config::load_sweep_config(&config) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            apply_overrides(&mut spec, seed, mc_n);
            run(spec, out, validate)
        }
        Command::Figure {
            name,
            out,
            seed,
            mc_n,
            validate,
        } => {
            let mut spec = match sweep::preset_figure(&name) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            apply_overrides(&mut spec, seed, mc_n);
            run(spec, out, validate)
        }
    }
}
