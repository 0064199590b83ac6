//! Command-line front end: config files, figure presets, CSV output and
//! the self-check suite.
//!
//! Exit codes: 0 success, 1 property failure, 2 invalid input, 3 infeasible
//! computation.

pub mod check;
pub mod config;
pub mod csv;
pub mod presets;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::asymptotics::asym_report;
use crate::error::RelayError;
use crate::montecarlo::{sweep, with_workers};

pub use check::{run_suite, CheckOutcome, Fault};
pub use config::{CaseKind, ConfigError, ExperimentConfig, PowerSpec, PowerUnit};
pub use presets::FigurePreset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "multipair-relay", version, about = "Multi-pair massive-MIMO relaying simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo sum rate versus N for a config file.
    Sweep {
        config: PathBuf,
        /// Worker threads for the trials (defaults to all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Closed-form large-N per-user SINRs and rates for a config file or preset.
    Asymptote {
        /// Config file path, or one of fig2..fig5.
        source: String,
    },
    /// Rerun one of the published sum-rate figures.
    Reproduce {
        figure: FigurePreset,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated antenna counts replacing the preset's list.
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the invariant self-check suite.
    Check {
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<Fault>,
    },
}

/// Maps a library error to its exit code.
pub fn exit_code(err: &RelayError) -> i32 {
    match err {
        RelayError::ZfInfeasible { .. }
        | RelayError::Singular { .. }
        | RelayError::NonFiniteTrial { .. }
        | RelayError::MissingAsymptote { .. } => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<RelayError> for Failure {
    fn from(err: RelayError) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn load_config(path: &Path) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
    ExperimentConfig::parse(&text).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| input_failure(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| input_failure(format!("stdout: {e}"))),
    }
}

fn run_sweep_config(
    cfg: &ExperimentConfig,
    comments: &[String],
    workers: Option<usize>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = cfg.sweep_spec();
    let result = match workers {
        Some(0) => return Err(input_failure("--workers must be at least 1")),
        Some(w) => with_workers(w, || sweep(&spec))?,
        None => sweep(&spec)?,
    };
    emit(&csv::sweep_csv(&result, comments), cfg.output.as_deref(), stdout)
}

fn run_asymptote(source: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let path = Path::new(source);
    let (cfg, comments) = if path.exists() {
        (load_config(path)?, Vec::new())
    } else if let Ok(preset) = source.parse::<FigurePreset>() {
        (preset.config(), preset.csv_comments())
    } else {
        return Err(input_failure(format!(
            "{source}: no such config file and not a preset name"
        )));
    };
    let case = cfg.scaling_case();
    if !case.is_scaled() {
        return Err(input_failure(
            "asymptote needs a scaled case (I, II or III); the unscaled case has no closed-form limit",
        ));
    }
    let profile = cfg.profile();
    let reports = cfg
        .schemes
        .iter()
        .map(|&s| asym_report(s, &case, &profile, cfg.noise_power()))
        .collect::<crate::Result<Vec<_>>>()?;
    emit(
        &csv::asymptote_csv(&reports, &profile, &comments),
        cfg.output.as_deref(),
        stdout,
    )
}

fn run_check(
    fault: Option<Fault>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let outcomes = run_suite(fault);
    let io = |e: std::io::Error| input_failure(format!("stdout: {e}"));
    for o in &outcomes {
        writeln!(stdout, "{o}").map_err(io)?;
    }
    for note in check::info_notes() {
        writeln!(stdout, "{note}").map_err(io)?;
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.property)
        .collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(stderr, "error: failing properties: {}", failed.join(", "));
        Ok(EXIT_PROPERTY)
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Sweep { config, workers } => {
            let cfg = load_config(&config)?;
            run_sweep_config(&cfg, &[], workers, stdout)?;
        }
        Command::Asymptote { source } => run_asymptote(&source, stdout)?,
        Command::Reproduce {
            figure,
            trials,
            seed,
            out,
            n,
            workers,
        } => {
            let mut cfg = figure.config();
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(n) = n {
                cfg.n_values = n;
            }
            cfg.output = out;
            if figure == FigurePreset::Fig3 {
                for note in check::info_notes() {
                    let _ = writeln!(stderr, "{note}");
                }
            }
            run_sweep_config(&cfg, &figure.csv_comments(), workers, stdout)?;
        }
        Command::Check { inject_fault } => return run_check(inject_fault, stdout, stderr),
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("multipair-relay").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn asymptote_preset_sums() {
        let (code, out, _) = run_capture(&["asymptote", "fig5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# derived-parameter"), "{out}");
        assert!(out.contains("mrc,sum,,,,8.98"), "{out}");
        assert!(out.contains("zf,sum,,,,8.89"), "{out}");
    }

    #[test]
    fn unknown_source_is_input_error() {
        let (code, _, err) = run_capture(&["asymptote", "/nonexistent/cfg.txt"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("not a preset"), "{err}");
    }

    #[test]
    fn bad_flags_exit_2() {
        assert_eq!(run_capture(&["reproduce", "fig9"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["check", "--inject-fault", "nope"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn zf_below_k_is_infeasible() {
        let (code, _, err) = run_capture(&["reproduce", "fig2", "--n", "4,8", "--trials", "4"]);
        assert_eq!(code, EXIT_INFEASIBLE, "{err}");
    }

    #[test]
    fn small_reproduce_run() {
        let (code, out, err) =
            run_capture(&["reproduce", "fig3", "--n", "8,16", "--trials", "10", "--workers", "2"]);
        assert_eq!(code, 0, "{err}");
        assert!(err.contains("INFO fig3"));
        assert_eq!(out.lines().count(), 1 + 3 * 2);
    }
}
