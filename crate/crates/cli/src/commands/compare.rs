use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gmde::stats::{missing_cells, summarize_values, wlt_table, CellMap, WltTable};

use super::{floored, load_results};
use crate::config::ExperimentConfig;
use crate::error::{io_err, CliError, CliResult};

pub const REPORT_DIR: &str = "report";

#[derive(Debug)]
pub struct CompareOutput {
    pub tables: Vec<WltTable>,
    pub report_dir: PathBuf,
}

fn canonical(cfg: &ExperimentConfig, id: &str) -> CliResult<String> {
    Ok(cfg.algorithm(id)?.id().to_string())
}

/// Compares `candidate` with each opponent on the results stored in
/// `results`, writing tables, summaries and convergence data to
/// `results/report`.
pub fn cmd_compare(
    cfg: &ExperimentConfig,
    results: &Path,
    candidate: &str,
    opponents: &[String],
    alpha: f64,
) -> CliResult<CompareOutput> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Config(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let candidate = canonical(cfg, candidate)?;
    let opponents = opponents
        .iter()
        .map(|o| canonical(cfg, o))
        .collect::<CliResult<Vec<_>>>()?;
    let mut algorithms = vec![candidate.clone()];
    for o in &opponents {
        if !algorithms.contains(o) {
            algorithms.push(o.clone());
        }
    }
    let loaded = load_results(results, &algorithms)?;
    let floor = cfg.output.error_floor;
    let values: CellMap = loaded
        .cells
        .iter()
        .map(|(k, recs)| (k.clone(), recs.iter().map(|r| floored(r.error, floor)).collect()))
        .collect();

    let alg_refs: Vec<&str> = algorithms.iter().map(String::as_str).collect();
    let fn_refs: Vec<&str> = loaded.functions.iter().map(String::as_str).collect();
    let mut problems = loaded.failed.clone();
    problems.extend(
        missing_cells(&alg_refs, &fn_refs, &values)
            .into_iter()
            .map(|(a, f)| format!("{a}/{f}: no results")),
    );
    if fn_refs.is_empty() {
        problems.push("no results for the requested algorithms".into());
    }
    if !problems.is_empty() {
        return Err(CliError::Partial(format!(
            "cannot compare, missing cells:\n  {}",
            problems.join("\n  ")
        )));
    }

    let opp_refs: Vec<&str> = opponents.iter().map(String::as_str).collect();
    let tables = cfg
        .table_modes()
        .into_iter()
        .map(|mode| wlt_table(&candidate, &opp_refs, &fn_refs, &values, mode, alpha))
        .collect::<gmde::Result<Vec<_>>>()
        .map_err(|e| CliError::Partial(e.to_string()))?;

    let dir = results.join(REPORT_DIR);
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(io_err(path))
    };
    for t in &tables {
        let mode = t.mode.name();
        write(&format!("wlt-{mode}.txt"), t.to_text())?;
        write(&format!("wlt-{mode}.tsv"), t.to_tsv())?;
        let mut totals = String::from("opponent\twins\tlosses\tties\n");
        for (o, c) in t.opponents.iter().zip(&t.totals) {
            writeln!(totals, "{o}\t{}\t{}\t{}", c.wins, c.losses, c.ties).unwrap();
        }
        write(&format!("totals-{mode}.tsv"), totals)?;
    }

    let mut summary = String::from("algorithm\tfunction\truns\tmean\tstd\tmin\tmax\tmedian\n");
    let mut convergence = String::from("algorithm,function,run,generation,used_fes,best_fitness\n");
    for f in &loaded.functions {
        for a in &algorithms {
            let key = (a.clone(), f.clone());
            let s = summarize_values(a, f, &values[&key])?;
            writeln!(
                summary,
                "{a}\t{f}\t{}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}\t{:.6e}",
                s.n_runs, s.mean, s.std, s.min, s.max, s.median
            )
            .unwrap();
            for rec in &loaded.cells[&key] {
                for t in &rec.trace {
                    writeln!(
                        convergence,
                        "{a},{f},{},{},{},{:.16e}",
                        rec.run, t.generation, t.used_fes, t.best_fitness
                    )
                    .unwrap();
                }
            }
        }
    }
    write("summary.tsv", summary)?;
    write("convergence.csv", convergence)?;
    Ok(CompareOutput {
        tables,
        report_dir: dir,
    })
}
