use std::path::Path;

use gmde::bench::write_suite;

use crate::config::ExperimentConfig;
use crate::error::CliResult;

/// Writes the configured suite as one text file per function. Returns the
/// number of functions written.
pub fn cmd_suite_gen(cfg: &ExperimentConfig, out: &Path) -> CliResult<usize> {
    let suite = cfg.suite()?;
    write_suite(out, &suite)?;
    Ok(suite.len())
}
