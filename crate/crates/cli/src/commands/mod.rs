pub mod compare;
pub mod run;
pub mod suite_gen;
pub mod sweep;

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::records::{read_manifest, StoredRecord};

/// Successful records under `dir`, grouped per `(algorithm, function)` and
/// ordered by run index, plus functions in manifest order.
pub(crate) struct LoadedResults {
    pub functions: Vec<String>,
    pub cells: BTreeMap<(String, String), Vec<StoredRecord>>,
    pub failed: Vec<String>,
}

pub(crate) fn load_results(dir: &Path, algorithms: &[String]) -> CliResult<LoadedResults> {
    let entries = read_manifest(dir)?;
    let mut functions: Vec<String> = Vec::new();
    let mut cells: BTreeMap<(String, String), Vec<StoredRecord>> = BTreeMap::new();
    let mut failed = Vec::new();
    for e in entries.iter().filter(|e| algorithms.contains(&e.algorithm)) {
        if !functions.contains(&e.function) {
            functions.push(e.function.clone());
        }
        if !e.is_ok() {
            failed.push(format!("{}/{}/run {}: {}", e.algorithm, e.function, e.run, e.status));
            continue;
        }
        let rec = StoredRecord::read(&dir.join(&e.file))?;
        if rec.algorithm != e.algorithm || rec.function != e.function || rec.run != e.run {
            return Err(CliError::Partial(format!(
                "{}: contents do not match its manifest entry",
                e.file
            )));
        }
        cells
            .entry((e.algorithm.clone(), e.function.clone()))
            .or_default()
            .push(rec);
    }
    for runs in cells.values_mut() {
        runs.sort_by_key(|r| r.run);
    }
    Ok(LoadedResults {
        functions,
        cells,
        failed,
    })
}

/// Error used for comparisons: values below `floor` count as reaching the
/// optimum.
pub(crate) fn floored(error: f64, floor: f64) -> f64 {
    if error < floor {
        0.0
    } else {
        error
    }
}
