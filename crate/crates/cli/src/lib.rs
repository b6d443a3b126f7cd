//! Batch experiments on top of the `gmde` library: configuration, parallel
//! run execution with persisted records, preprocess sweeps, and Wilcoxon
//! comparison reports.

pub mod commands;
pub mod config;
mod error;
pub mod plan;
pub mod records;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "gmde", version, about = "Differential evolution experiment runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Experiment configuration file (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `[output] dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct Exec {
    /// Re-run cells that already have a record.
    #[arg(long)]
    pub force: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every algorithm on every suite function.
    Run {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exec: Exec,
    },
    /// Sweep the one- or two-difference strategy family with preprocess settings.
    Sweep {
        /// Number of difference vectors (1 or 2).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exec: Exec,
    },
    /// Wilcoxon win/loss/tie report of a candidate against opponents.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Significance level; overrides `[output] alpha`.
        #[arg(long)]
        alpha: Option<f64>,
        /// Overrides `[compare] candidate`.
        #[arg(long)]
        candidate: Option<String>,
        /// Comma-separated; overrides `[compare] opponents`.
        #[arg(long, value_delimiter = ',')]
        opponents: Option<Vec<String>>,
    },
    /// Write the benchmark suite files.
    SuiteGen {
        #[command(flatten)]
        common: Common,
    },
}

fn jobs(exec: &Exec) -> usize {
    exec.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

/// Executes a parsed command line and returns the process exit status.
pub fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { common, exec } => {
            let cfg = ExperimentConfig::load(&common.config)?;
            let out = common.out.unwrap_or_else(|| cfg.output.dir.clone());
            let done = commands::run::cmd_run(&cfg, &out, exec.force, jobs(&exec))?;
            println!(
                "{} cells: {} executed, {} already complete",
                done.entries.len(),
                done.executed,
                done.skipped
            );
        }
        Command::Sweep { n, common, exec } => {
            let cfg = ExperimentConfig::load(&common.config)?;
            let out = common.out.unwrap_or_else(|| cfg.output.dir.clone());
            let done = commands::sweep::cmd_sweep(&cfg, n as usize, &out, exec.force, jobs(&exec))?;
            println!(
                "swept {} strategies ({} cells executed); ranking in {}",
                done.strategies.len(),
                done.execution.executed,
                done.dir.join("ranking.txt").display()
            );
        }
        Command::Compare {
            common,
            alpha,
            candidate,
            opponents,
        } => {
            let cfg = ExperimentConfig::load(&common.config)?;
            let out = common.out.unwrap_or_else(|| cfg.output.dir.clone());
            let (default_candidate, default_opponents) = cfg.comparison();
            let report = commands::compare::cmd_compare(
                &cfg,
                &out,
                &candidate.unwrap_or(default_candidate),
                &opponents.unwrap_or(default_opponents),
                alpha.unwrap_or(cfg.output.alpha),
            )?;
            for t in &report.tables {
                print!("{}", t.to_text());
            }
            println!("reports in {}", report.report_dir.display());
        }
        Command::SuiteGen { common } => {
            let cfg = ExperimentConfig::load(&common.config)?;
            let out = common.out.unwrap_or_else(|| cfg.output.dir.join("suite"));
            let n = commands::suite_gen::cmd_suite_gen(&cfg, &out)?;
            println!("wrote {n} functions to {}", out.display());
        }
    }
    Ok(())
}

/// Parses `args` and runs the command. Usage errors exit with status 1,
/// like configuration errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
