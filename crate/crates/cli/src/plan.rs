//! Execution of algorithm × function × run cells on a worker pool.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use gmde::bench::BenchFunction;
use gmde::control::ControlMode;
use gmde::engine::{run, Algorithm, BoundaryPolicy, RunConfig};
use gmde::Objective;
use rayon::prelude::*;

use crate::error::{io_err, CliError, CliResult};
use crate::records::{record_path, write_manifest, ManifestEntry, StoredRecord};

pub struct Plan {
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<BenchFunction>,
    pub runs: usize,
    pub base_seed: u64,
    pub np: usize,
    pub max_fes: u64,
    pub control: ControlMode,
    pub boundary: BoundaryPolicy,
    pub record_every: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Execution {
    pub executed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub entries: Vec<ManifestEntry>,
}

struct Cell<'p> {
    algorithm: &'p Algorithm,
    function: &'p BenchFunction,
    run: usize,
}

enum CellOutcome {
    Ran,
    Skipped,
    Failed(String),
}

impl Plan {
    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    fn cells(&self) -> Vec<Cell<'_>> {
        let mut cells = Vec::with_capacity(self.algorithms.len() * self.functions.len() * self.runs);
        for algorithm in &self.algorithms {
            for function in &self.functions {
                for run in 0..self.runs {
                    cells.push(Cell { algorithm, function, run });
                }
            }
        }
        cells
    }

    fn run_config(&self, cell: &Cell<'_>) -> RunConfig {
        RunConfig {
            dimension: cell.function.dimension(),
            np: self.np,
            max_fes: self.max_fes,
            control: self.control,
            algorithm: cell.algorithm.clone(),
            boundary: self.boundary,
            seed: self.seed(cell.run),
            record_every: self.record_every,
        }
    }

    /// An existing record counts as done when it describes the same cell
    /// under the same settings.
    fn is_done(&self, cell: &Cell<'_>, path: &Path) -> bool {
        let Ok(rec) = StoredRecord::read(path) else {
            return false;
        };
        rec.algorithm == cell.algorithm.id()
            && rec.function == cell.function.name()
            && rec.run == cell.run
            && rec.seed == self.seed(cell.run)
            && rec.np == self.np
            && rec.max_fes == self.max_fes
            && rec.dimension == cell.function.dimension()
            && rec.control == self.control.name()
            && rec.boundary == self.boundary.name()
    }

    fn execute_cell(&self, cell: &Cell<'_>, out: &Path, force: bool) -> CellOutcome {
        let rel = record_path(cell.algorithm.id(), cell.function.name(), cell.run);
        let path = out.join(&rel);
        if !force && self.is_done(cell, &path) {
            return CellOutcome::Skipped;
        }
        let rec = match run(cell.function, &self.run_config(cell)) {
            Ok(rec) => rec,
            Err(e) => return CellOutcome::Failed(e.to_string()),
        };
        let text = StoredRecord::from_run(&rec, cell.run, cell.function.bias()).to_text();
        let written = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| std::fs::write(&path, text));
        match written {
            Ok(()) => CellOutcome::Ran,
            Err(e) => CellOutcome::Failed(format!("{}: {e}", path.display())),
        }
    }

    /// Runs every cell that is not already complete, then rewrites the
    /// manifest. `jobs` is the worker count.
    pub fn execute(&self, out: &Path, force: bool, jobs: usize) -> CliResult<Execution> {
        std::fs::create_dir_all(out).map_err(io_err(out))?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
        let cells = self.cells();
        let total = cells.len();
        let finished = AtomicUsize::new(0);
        let outcomes: Vec<CellOutcome> = pool.install(|| {
            cells
                .par_iter()
                .map(|cell| {
                    let outcome = self.execute_cell(cell, out, force);
                    let done = finished.fetch_add(1, Ordering::Relaxed) + 1;
                    if let CellOutcome::Failed(msg) = &outcome {
                        log::warn!(
                            "{} on {} run {} failed: {msg}",
                            cell.algorithm.id(),
                            cell.function.name(),
                            cell.run
                        );
                    }
                    if done.is_multiple_of(100) || done == total {
                        log::info!("{done}/{total} cells finished");
                    }
                    outcome
                })
                .collect()
        });

        let mut exec = Execution::default();
        for (cell, outcome) in cells.iter().zip(outcomes) {
            let status = match outcome {
                CellOutcome::Ran => {
                    exec.executed += 1;
                    "ok".to_string()
                }
                CellOutcome::Skipped => {
                    exec.skipped += 1;
                    "ok".to_string()
                }
                CellOutcome::Failed(msg) => {
                    exec.failed += 1;
                    format!("failed: {msg}")
                }
            };
            exec.entries.push(ManifestEntry {
                algorithm: cell.algorithm.id().to_string(),
                function: cell.function.name().to_string(),
                run: cell.run,
                seed: self.seed(cell.run),
                status,
                file: record_path(cell.algorithm.id(), cell.function.name(), cell.run)
                    .to_string_lossy()
                    .into_owned(),
            });
        }
        write_manifest(out, &exec.entries)?;
        Ok(exec)
    }
}
