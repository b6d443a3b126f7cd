//! Experiment configuration: a TOML file with one section per concern.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use gmde::bench::{load_suite, make_suite, BenchFunction};
use gmde::control::{ControlMode, JdeConfig};
use gmde::engine::{Algorithm, BoundaryPolicy, PoolConfig};
use gmde::stats::TableMode;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub suite: SuiteSection,
    pub algorithms: AlgorithmsSection,
    #[serde(default)]
    pub control: ControlSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub ensemble: EnsembleSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteSection {
    pub dimension: usize,
    pub seed: u64,
    /// Function names to keep, in this order. Empty keeps the whole suite.
    pub functions: Vec<String>,
    /// Load previously written suite files instead of generating.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl Default for SuiteSection {
    fn default() -> Self {
        Self {
            dimension: 30,
            seed: 2005,
            functions: Vec::new(),
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmsSection {
    /// Registry ids, strategy notation, or `gmde` for the ensemble.
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControlSection {
    /// `jde` or `fixed`.
    pub mode: String,
    pub f: f64,
    pub cr: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub f_l: f64,
    pub f_u: f64,
}

impl Default for ControlSection {
    fn default() -> Self {
        let jde = JdeConfig::default();
        Self {
            mode: "jde".into(),
            f: 0.5,
            cr: 0.9,
            tau1: jde.tau1,
            tau2: jde.tau2,
            f_l: jde.f_l,
            f_u: jde.f_u,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub np: usize,
    /// Defaults to `dimension · 10000`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_fes: Option<u64>,
    pub runs: usize,
    /// Run `k` uses seed `base_seed + k`.
    pub base_seed: u64,
    /// `reflect`, `clamp` or `resample`.
    pub boundary: String,
    pub record_every: u64,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            np: 50,
            max_fes: None,
            runs: 50,
            base_seed: 1,
            boundary: "reflect".into(),
            record_every: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnsembleSection {
    pub pool1: Vec<String>,
    pub pool2: Vec<String>,
    pub ssr: f64,
}

impl Default for EnsembleSection {
    fn default() -> Self {
        let p = PoolConfig::default();
        Self {
            pool1: p.pool1,
            pool2: p.pool2,
            ssr: p.ssr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
    /// `per-function`, `across-functions` or `both`.
    pub report: String,
    pub alpha: f64,
    /// Errors (best fitness minus bias) below this are compared as 0.
    pub error_floor: f64,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("results"),
            report: "per-function".into(),
            alpha: 0.05,
            error_floor: 0.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareSection {
    /// Defaults to the first algorithm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    /// Defaults to every other algorithm.
    pub opponents: Vec<String>,
}

/// Preprocess-phase settings used by `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub dimension: usize,
    pub np: usize,
    pub max_fes: u64,
    pub runs: usize,
    pub f: f64,
    pub cr: f64,
    /// Empty sweeps the whole suite.
    pub functions: Vec<String>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            dimension: 10,
            np: 50,
            max_fes: 10_000,
            runs: 100,
            f: 0.5,
            cr: 0.9,
            functions: Vec::new(),
        }
    }
}

/// Line of `key` inside `[section]`, for diagnostics.
fn locate(source: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in source.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('[') && t.ends_with(']') {
            current = t[1..t.len() - 1].trim().to_string();
        } else if current == section && t.split('=').next().map(str::trim) == Some(key) {
            return Some(i + 1);
        }
    }
    None
}

impl ExperimentConfig {
    pub fn from_toml(source: &str) -> CliResult<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(source).map_err(|e| CliError::Config(format!("invalid config: {e}")))?;
        cfg.validate().map_err(|(section, key, msg)| {
            let at = locate(source, section, key)
                .map(|l| format!("line {l}: "))
                .unwrap_or_default();
            CliError::Config(format!("{at}[{section}] {key}: {msg}"))
        })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn max_fes(&self) -> u64 {
        self.run
            .max_fes
            .unwrap_or(self.suite.dimension as u64 * 10_000)
    }

    pub fn control_mode(&self) -> ControlMode {
        let c = &self.control;
        match c.mode.as_str() {
            "fixed" => ControlMode::Fixed { f: c.f, cr: c.cr },
            _ => ControlMode::Jde(JdeConfig {
                tau1: c.tau1,
                tau2: c.tau2,
                f_l: c.f_l,
                f_u: c.f_u,
            }),
        }
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        BoundaryPolicy::from_name(&self.run.boundary).unwrap_or_default()
    }

    pub fn pools(&self) -> PoolConfig {
        PoolConfig {
            pool1: self.ensemble.pool1.clone(),
            pool2: self.ensemble.pool2.clone(),
            ssr: self.ensemble.ssr,
        }
    }

    pub fn algorithm(&self, id: &str) -> gmde::Result<Algorithm> {
        match Algorithm::from_id(id)? {
            Algorithm::Ensemble(_) => Ok(Algorithm::Ensemble(self.pools())),
            single => Ok(single),
        }
    }

    pub fn table_modes(&self) -> Vec<TableMode> {
        match self.output.report.as_str() {
            "both" => vec![TableMode::PerFunction, TableMode::AcrossFunctions],
            other => TableMode::from_name(other).into_iter().collect(),
        }
    }

    /// `(candidate, opponents)` for `compare`.
    pub fn comparison(&self) -> (String, Vec<String>) {
        let candidate = self
            .compare
            .candidate
            .clone()
            .unwrap_or_else(|| self.algorithms.ids[0].clone());
        let opponents = if self.compare.opponents.is_empty() {
            self.algorithms
                .ids
                .iter()
                .filter(|id| **id != candidate)
                .cloned()
                .collect()
        } else {
            self.compare.opponents.clone()
        };
        (candidate, opponents)
    }

    /// Builds or loads the suite for `dimension` and keeps `filter`, in
    /// filter order.
    pub fn suite_for(&self, dimension: usize, filter: &[String]) -> CliResult<Vec<BenchFunction>> {
        let all = match &self.suite.path {
            Some(path) => load_suite(path)?,
            None => make_suite(dimension, self.suite.seed)?,
        };
        if let Some(f) = all.iter().find(|f| gmde::Objective::dimension(*f) != dimension) {
            return Err(CliError::Config(format!(
                "suite function `{}` has dimension {}, expected {dimension}",
                gmde::Objective::name(f),
                gmde::Objective::dimension(f)
            )));
        }
        if filter.is_empty() {
            return Ok(all);
        }
        filter
            .iter()
            .map(|name| {
                all.iter()
                    .find(|f| gmde::Objective::name(*f) == name)
                    .cloned()
                    .ok_or_else(|| CliError::Config(format!("unknown suite function `{name}`")))
            })
            .collect()
    }

    pub fn suite(&self) -> CliResult<Vec<BenchFunction>> {
        self.suite_for(self.suite.dimension, &self.suite.functions)
    }

    fn validate(&self) -> Result<(), (&'static str, &'static str, String)> {
        let fail = |section, key, msg: String| Err((section, key, msg));
        if self.suite.dimension < 2 {
            return fail("suite", "dimension", "must be at least 2".into());
        }
        if self.algorithms.ids.is_empty() {
            return fail("algorithms", "ids", "at least one algorithm is required".into());
        }
        let mut seen = HashSet::new();
        for id in &self.algorithms.ids {
            if let Err(e) = Algorithm::from_id(id) {
                return fail("algorithms", "ids", e.to_string());
            }
            if !seen.insert(crate::records::slug(id)) {
                return fail("algorithms", "ids", format!("`{id}` is listed twice"));
            }
        }
        if !matches!(self.control.mode.as_str(), "jde" | "fixed") {
            return fail("control", "mode", format!("expected `jde` or `fixed`, got `{}`", self.control.mode));
        }
        if let Err(e) = self.control_mode().validate() {
            return fail("control", "mode", e.to_string());
        }
        if self.run.runs == 0 {
            return fail("run", "runs", "must be at least 1".into());
        }
        if self.run.np < gmde::population::MIN_POPULATION {
            return fail("run", "np", format!("must be at least {}", gmde::population::MIN_POPULATION));
        }
        if self.max_fes() < self.run.np as u64 {
            return fail("run", "max_fes", "must cover the initial population".into());
        }
        if self.run.record_every == 0 {
            return fail("run", "record_every", "must be at least 1".into());
        }
        if BoundaryPolicy::from_name(&self.run.boundary).is_none() {
            return fail("run", "boundary", format!("unknown policy `{}`", self.run.boundary));
        }
        if let Err(e) = self.pools().resolve() {
            return fail("ensemble", "pool1", e.to_string());
        }
        if !(self.output.alpha > 0.0 && self.output.alpha < 1.0) {
            return fail("output", "alpha", "must lie in (0, 1)".into());
        }
        if self.table_modes().is_empty() {
            return fail(
                "output",
                "report",
                format!("expected `per-function`, `across-functions` or `both`, got `{}`", self.output.report),
            );
        }
        if !(self.output.error_floor >= 0.0) {
            return fail("output", "error_floor", "must be non-negative".into());
        }
        let (candidate, opponents) = self.comparison();
        for id in std::iter::once(&candidate).chain(&opponents) {
            if !self.algorithms.ids.contains(id) {
                return fail("compare", "opponents", format!("`{id}` is not in [algorithms] ids"));
            }
        }
        let sw = &self.sweep;
        if sw.dimension < 2 || sw.runs == 0 || sw.max_fes < sw.np as u64 {
            return fail("sweep", "runs", "needs dimension >= 2, runs >= 1 and max_fes >= np".into());
        }
        if let Err(e) = (ControlMode::Fixed { f: sw.f, cr: sw.cr }).validate() {
            return fail("sweep", "f", e.to_string());
        }
        Ok(())
    }
}
