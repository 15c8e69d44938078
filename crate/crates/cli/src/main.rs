//! `pubench`: synthesize datasets, run benchmarks, regenerate reports, and
//! run the built-in property checks.
//!
//! Exit codes: 0 on success, 1 on validation or computation failures
//! (including failing checks), 2 on I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pubench_core::checks;
use pubench_core::data::{save_labeled_csv, save_pu_csv};
use pubench_core::harness::{
    aggregate, emit_report, generate_synth, read_trials, render_summary_csv, render_sweep_csv,
    run_benchmark, ExperimentConfig, HarnessError, SynthSpec,
};

#[derive(Parser)]
#[command(name = "pubench", version, about = "Positive-unlabeled learning benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic train/test CSV files from a spec file.
    Synth {
        /// Spec file with `seed`, `setting`, `pi`, `c`, and `dataset.*` keys.
        #[arg(long)]
        spec: PathBuf,
        /// Output directory for train.csv and test.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the benchmark described by a config file and write its reports.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rebuild summary/sweep CSV files from an existing trials.jsonl.
    Report {
        #[arg(long)]
        trials: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the property checks; `--fast` trims sample counts.
    Check {
        #[arg(long)]
        fast: bool,
    },
}

fn read_text(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run_synth(spec_path: &Path, out: &Path) -> Result<(), HarnessError> {
    let spec = SynthSpec::from_str(&read_text(spec_path)?)?;
    let (train, test) = generate_synth(&spec)?;
    fs::create_dir_all(out).map_err(|source| HarnessError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let train_path = out.join("train.csv");
    let test_path = out.join("test.csv");
    save_pu_csv(&train, &train_path)?;
    save_labeled_csv(&test, &test_path)?;
    println!("wrote {}", train_path.display());
    println!("wrote {}", test_path.display());
    Ok(())
}

fn run_bench(config_path: &Path) -> Result<(), HarnessError> {
    let cfg = ExperimentConfig::from_str(&read_text(config_path)?)?;
    let output = run_benchmark(&cfg)?;
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    let agg = aggregate(&output.trials);
    let written = emit_report(&cfg.out_dir, &output.trials, &agg)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    if let Some(table) = &agg.summary {
        print!("{}", render_summary_csv(table));
    }
    Ok(())
}

fn run_report(trials_path: &Path, out: &Path) -> Result<(), HarnessError> {
    let trials = read_trials(trials_path)?;
    let agg = aggregate(&trials);
    for warning in &agg.warnings {
        eprintln!("warning: {warning}");
    }
    fs::create_dir_all(out).map_err(|source| HarnessError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    if let Some(table) = &agg.summary {
        let path = out.join("summary.csv");
        write_text(&path, &render_summary_csv(table))?;
        println!("wrote {}", path.display());
    }
    for sweep in &agg.sweeps {
        let path = out.join(format!("sweep_{}.csv", sweep.name));
        write_text(&path, &render_sweep_csv(sweep))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_check(fast: bool) -> u8 {
    let outcomes = checks::run_all(fast);
    let mut failures = 0;
    for outcome in &outcomes {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} {} - {}", outcome.name, outcome.detail);
        if !outcome.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {} checks failed", outcomes.len());
        1
    } else {
        println!("all {} checks passed", outcomes.len());
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth { spec, out } => run_synth(&spec, &out),
        Command::Bench { config } => run_bench(&config),
        Command::Report { trials, out } => run_report(&trials, &out),
        Command::Check { fast } => return ExitCode::from(run_check(fast)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
