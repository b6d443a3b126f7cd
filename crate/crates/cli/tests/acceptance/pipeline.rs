use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use gmde::stats::TableMode;
use gmde_cli::commands::compare::{cmd_compare, REPORT_DIR};
use gmde_cli::commands::run::cmd_run;
use gmde_cli::commands::sweep::sweep_dir;
use gmde_cli::records::{read_manifest, StoredRecord};
use gmde_cli::ExperimentConfig;
use tempfile::TempDir;

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Output of the first desk pipeline, kept for the determinism check.
static FIRST_RUN: OnceLock<TempDir> = OnceLock::new();

fn desk_config() -> Result<ExperimentConfig, String> {
    let cfg = ExperimentConfig::load(&config_path("desk_comparison.toml")).map_err(|e| e.to_string())?;
    let functions = cfg.suite().map_err(|e| e.to_string())?.len();
    let (candidate, opponents) = cfg.comparison();
    let expected = cfg.suite.dimension == 30
        && cfg.run.np == 50
        && cfg.max_fes() == 300_000
        && cfg.run.runs == 30
        && functions >= 10
        && candidate == "gmde"
        && opponents == ["GMDE#1", "GMDE#2"]
        && cfg.output.alpha == 0.05;
    if !expected {
        return Err("desk configuration does not match the required protocol".into());
    }
    Ok(cfg)
}

/// Runs and compares the desk configuration into `dir`; returns the
/// per-function totals as (opponent, wins, losses, ties).
fn desk_pipeline(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<(String, usize, usize, usize)>, String> {
    cmd_run(cfg, dir, false, jobs()).map_err(|e| e.to_string())?;
    let (candidate, opponents) = cfg.comparison();
    let out = cmd_compare(cfg, dir, &candidate, &opponents, cfg.output.alpha).map_err(|e| e.to_string())?;
    let table = out
        .tables
        .iter()
        .find(|t| t.mode == TableMode::PerFunction)
        .ok_or("no per-function table")?;
    Ok(table
        .opponents
        .iter()
        .zip(&table.totals)
        .map(|(o, c)| (o.clone(), c.wins, c.losses, c.ties))
        .collect())
}

pub fn relative_performance() -> Result<String, String> {
    let cfg = desk_config()?;
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let totals = desk_pipeline(&cfg, dir.path())?;
    let _ = FIRST_RUN.set(dir);
    let lines: Vec<String> = totals
        .iter()
        .map(|(o, w, l, t)| format!("vs {o} W/L/T {w}/{l}/{t} (margin {})", *w as i64 - *l as i64))
        .collect();
    let summary = format!("{} functions; {}", cfg.suite().map_err(|e| e.to_string())?.len(), lines.join(", "));
    if totals.iter().all(|(_, w, l, _)| w > l) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn tree(dir: &Path) -> Result<BTreeMap<PathBuf, Vec<u8>>, String> {
    let mut files = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).map_err(|e| format!("{}: {e}", d.display()))? {
            let path = entry.map_err(|e| e.to_string())?.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
                files.insert(path.strip_prefix(dir).unwrap().to_path_buf(), bytes);
            }
        }
    }
    Ok(files)
}

pub fn determinism() -> Result<String, String> {
    let cfg = desk_config()?;
    let first = match FIRST_RUN.get() {
        Some(dir) => dir,
        None => {
            let dir = TempDir::new().map_err(|e| e.to_string())?;
            desk_pipeline(&cfg, dir.path())?;
            FIRST_RUN.get_or_init(|| dir)
        }
    };
    let second = TempDir::new().map_err(|e| e.to_string())?;
    desk_pipeline(&cfg, second.path())?;
    let a = tree(first.path())?;
    let b = tree(second.path())?;
    if a.keys().ne(b.keys()) {
        return Err("the two pipelines produced different file sets".into());
    }
    if let Some(path) = a.keys().find(|p| a[*p] != b[*p]) {
        return Err(format!("{} differs between pipelines", path.display()));
    }
    let reports = a.keys().filter(|p| p.starts_with(REPORT_DIR)).count();
    Ok(format!("{reports} report files and {} record files byte-identical", a.len() - reports))
}

pub fn sweep_shape() -> Result<String, String> {
    // Preprocess settings on the whole suite, with two runs per cell instead
    // of a hundred.
    let mut cfg = ExperimentConfig::load(&config_path("preprocess_sweep.toml")).map_err(|e| e.to_string())?;
    if cfg.sweep.dimension != 10 || cfg.sweep.max_fes != 10_000 {
        return Err("sweep configuration does not use D=10 and 10,000 FEs".into());
    }
    cfg.sweep.runs = 2;
    let work = TempDir::new().map_err(|e| e.to_string())?;
    let config = work.path().join("sweep.toml");
    std::fs::write(&config, cfg.to_toml()).map_err(|e| e.to_string())?;
    let out = work.path().join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_gmde"))
        .args(["sweep", "--n", "1", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("RUST_LOG", "warn")
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("gmde sweep exited with {status}"));
    }
    let dir = sweep_dir(&out, 1);
    let entries = read_manifest(&dir).map_err(|e| e.to_string())?;
    let strategies: BTreeSet<&str> = entries.iter().map(|e| e.algorithm.as_str()).collect();
    if strategies.len() != 27 {
        return Err(format!("{} strategies swept", strategies.len()));
    }
    let functions: BTreeSet<&str> = entries.iter().map(|e| e.function.as_str()).collect();
    let expected_cells = 27 * cfg.sweep.runs * functions.len();
    if entries.len() != expected_cells || !entries.iter().all(|e| e.is_ok()) {
        return Err(format!("{} manifest entries, expected {expected_cells} successful", entries.len()));
    }
    let mut max_used = 0;
    for e in &entries {
        let rec = StoredRecord::read(&dir.join(&e.file)).map_err(|e| e.to_string())?;
        if rec.dimension != 10 || rec.max_fes != 10_000 || rec.used_fes > 10_000 || rec.best_x.len() != 10 {
            return Err(format!(
                "{}: D={}, max_fes={}, used_fes={}",
                e.file, rec.dimension, rec.max_fes, rec.used_fes
            ));
        }
        max_used = max_used.max(rec.used_fes);
    }
    Ok(format!(
        "27 strategies x {} functions x {} runs, every record D=10 with at most {max_used} of 10000 FEs",
        functions.len(),
        cfg.sweep.runs
    ))
}
