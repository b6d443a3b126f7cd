use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gmde::control::ControlMode;
use gmde::engine::Algorithm;
use gmde::mutation::{enumerate_family, render_spec, DEFAULT_SWEEP_BLOCKS};

use super::{floored, load_results};
use crate::config::ExperimentConfig;
use crate::error::{io_err, CliError, CliResult};
use crate::plan::{Execution, Plan};

#[derive(Debug)]
pub struct SweepOutput {
    pub strategies: Vec<String>,
    pub execution: Execution,
    pub dir: PathBuf,
}

pub fn sweep_dir(out: &Path, n: usize) -> PathBuf {
    out.join(format!("sweep-n{n}"))
}

/// Sweeps the `n`-difference family with the preprocess settings of the
/// `[sweep]` section and writes a per-function ranking.
pub fn cmd_sweep(
    cfg: &ExperimentConfig,
    n: usize,
    out: &Path,
    force: bool,
    jobs: usize,
) -> CliResult<SweepOutput> {
    let family = enumerate_family(n, &DEFAULT_SWEEP_BLOCKS).map_err(|e| CliError::Config(e.to_string()))?;
    let sw = &cfg.sweep;
    let plan = Plan {
        algorithms: family.iter().cloned().map(Algorithm::Single).collect(),
        functions: cfg.suite_for(sw.dimension, &sw.functions)?,
        runs: sw.runs,
        base_seed: cfg.run.base_seed,
        np: sw.np,
        max_fes: sw.max_fes,
        control: ControlMode::Fixed { f: sw.f, cr: sw.cr },
        boundary: cfg.boundary(),
        record_every: cfg.run.record_every,
    };
    let dir = sweep_dir(out, n);
    log::info!(
        "sweep n={n}: {} strategies x {} functions x {} runs into {}",
        family.len(),
        plan.functions.len(),
        plan.runs,
        dir.display()
    );
    let execution = plan.execute(&dir, force, jobs)?;
    if execution.failed > 0 {
        return Err(CliError::Partial(format!("{} sweep cells failed", execution.failed)));
    }

    let ids: Vec<String> = family.iter().map(|s| s.id.clone()).collect();
    let loaded = load_results(&dir, &ids)?;
    let floor = cfg.output.error_floor;
    let mut best_counts = vec![0usize; ids.len()];
    let mut ranking = String::from("function\tbest_mean\tbest_strategies\n");
    let mut text = format!(
        "sweep n={n}: {} strategies, {} functions, {} runs, D={}, NP={}, {} FEs, F={}, Cr={}\n\n",
        ids.len(),
        loaded.functions.len(),
        sw.runs,
        sw.dimension,
        sw.np,
        sw.max_fes,
        sw.f,
        sw.cr
    );
    for f in &loaded.functions {
        let means: Vec<f64> = ids
            .iter()
            .map(|id| {
                let recs = &loaded.cells[&(id.clone(), f.clone())];
                recs.iter().map(|r| floored(r.error, floor)).sum::<f64>() / recs.len() as f64
            })
            .collect();
        let best = means.iter().copied().fold(f64::INFINITY, f64::min);
        let winners: Vec<usize> = (0..ids.len()).filter(|&k| means[k] == best).collect();
        let names: Vec<&str> = winners.iter().map(|&k| ids[k].as_str()).collect();
        for &k in &winners {
            best_counts[k] += 1;
        }
        writeln!(ranking, "{f}\t{best:.6e}\t{}", names.join(",")).unwrap();
        writeln!(text, "{f:32} {best:12.4e}  {}", names.join(", ")).unwrap();
    }
    writeln!(text, "\nstrategy  best-count  notation").unwrap();
    let mut counts = String::from("strategy\tnotation\tbest_count\n");
    for (spec, c) in family.iter().zip(&best_counts) {
        let notation = render_spec(spec);
        writeln!(counts, "{}\t{notation}\t{c}", spec.id).unwrap();
        writeln!(text, "{:8}  {c:10}  {notation}", spec.id).unwrap();
    }
    for (name, body) in [("ranking.tsv", ranking), ("best-counts.tsv", counts), ("ranking.txt", text)] {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(io_err(path))?;
    }
    Ok(SweepOutput {
        strategies: ids,
        execution,
        dir,
    })
}
