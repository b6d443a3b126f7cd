use std::path::Path;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::plan::{Execution, Plan};

pub fn plan_for(cfg: &ExperimentConfig) -> CliResult<Plan> {
    let algorithms = cfg
        .algorithms
        .ids
        .iter()
        .map(|id| cfg.algorithm(id))
        .collect::<gmde::Result<Vec<_>>>()?;
    Ok(Plan {
        algorithms,
        functions: cfg.suite()?,
        runs: cfg.run.runs,
        base_seed: cfg.run.base_seed,
        np: cfg.run.np,
        max_fes: cfg.max_fes(),
        control: cfg.control_mode(),
        boundary: cfg.boundary(),
        record_every: cfg.run.record_every,
    })
}

/// Executes every configured cell into `out`. Completed cells are kept
/// unless `force` is set.
pub fn cmd_run(cfg: &ExperimentConfig, out: &Path, force: bool, jobs: usize) -> CliResult<Execution> {
    let plan = plan_for(cfg)?;
    log::info!(
        "run: {} algorithms x {} functions x {} runs into {}",
        plan.algorithms.len(),
        plan.functions.len(),
        plan.runs,
        out.display()
    );
    let exec = plan.execute(out, force, jobs)?;
    if exec.failed > 0 {
        return Err(CliError::Partial(format!(
            "{} of {} cells failed; see {}",
            exec.failed,
            exec.entries.len(),
            out.join(crate::records::MANIFEST_FILE).display()
        )));
    }
    Ok(exec)
}
