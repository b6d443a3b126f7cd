use crate::engine::RunRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub algorithm: String,
    pub function: String,
    pub n_runs: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
}

/// Summary of the final best fitness of every record. All records must
/// share algorithm and objective.
pub fn summarize(records: &[RunRecord]) -> Result<RunSummary> {
    let first = records
        .first()
        .ok_or_else(|| Error::Stats("cannot summarize zero runs".into()))?;
    if let Some(r) = records
        .iter()
        .find(|r| r.algorithm != first.algorithm || r.objective != first.objective)
    {
        return Err(Error::Stats(format!(
            "mixed cells: {}/{} and {}/{}",
            first.algorithm, first.objective, r.algorithm, r.objective
        )));
    }
    let values: Vec<f64> = records.iter().map(|r| r.best_fitness).collect();
    summarize_values(&first.algorithm, &first.objective, &values)
}

pub fn summarize_values(algorithm: &str, function: &str, values: &[f64]) -> Result<RunSummary> {
    if values.is_empty() {
        return Err(Error::Stats("cannot summarize zero runs".into()));
    }
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let constant = sorted[0] == sorted[n - 1];
    // A constant sample keeps its exact value instead of a rounded mean.
    let mean = if constant {
        sorted[0]
    } else {
        values.iter().sum::<f64>() / n as f64
    };
    let std = if n > 1 && !constant {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(RunSummary {
        algorithm: algorithm.to_string(),
        function: function.to_string(),
        n_runs: n,
        mean,
        std,
        min: sorted[0],
        max: sorted[n - 1],
        median,
    })
}
