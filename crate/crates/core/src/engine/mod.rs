//! The evolutionary loop: operators, single-strategy DE and the GMDE
//! two-pool ensemble.
//!
//! Each ensemble generation draws one gate value to pick a pool. Every member
//! then runs all strategies of that pool with its own per-strategy F and one
//! shared Cr, evaluates every trial, and the best trial competes with the
//! member. One ensemble generation therefore costs `pool size × NP`
//! evaluations.

mod evolution;
mod operators;

pub use evolution::{select_pool, Evolution, PoolChoice, SlotPools, StepOutcome};
pub use operators::{
    binomial_crossover, binomial_crossover_into, greedy_select, repair_bounds,
    repair_bounds_in_place, trial_wins, BoundaryPolicy,
};

use std::time::{Duration, Instant};

use crate::control::ControlMode;
use crate::error::{Error, Result};
use crate::mutation::{lookup, StrategySpec};
use crate::objective::{EvalBudget, Objective};
use crate::rng::RngStream;

/// Algorithm id used for the two-pool ensemble.
pub const ENSEMBLE_ID: &str = "gmde";

#[derive(Debug, Clone, PartialEq)]
pub struct PoolConfig {
    pub pool1: Vec<String>,
    pub pool2: Vec<String>,
    pub ssr: f64,
}

impl Default for PoolConfig {
    fn default() -> Self {
        let ids = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        Self {
            pool1: ids(&["GMDE#4", "GMDE#6", "GMDE#11", "GMDE#15"]),
            pool2: ids(&["GMDE#1", "GMDE#7", "GMDE#10", "GMDE#13"]),
            ssr: 0.5,
        }
    }
}

impl PoolConfig {
    /// Resolves both pools against the registry. Returns the deduplicated
    /// strategy list (first pool, then second) and the matching slot pools.
    pub fn resolve(&self) -> Result<(Vec<StrategySpec>, SlotPools)> {
        if !(0.0..=1.0).contains(&self.ssr) {
            return Err(Error::config(format!("ssr must lie in [0, 1], got {}", self.ssr)));
        }
        if self.pool1.is_empty() || self.pool2.is_empty() {
            return Err(Error::config("both strategy pools must be non-empty"));
        }
        let mut specs: Vec<StrategySpec> = Vec::new();
        let mut slots_for = |ids: &[String]| -> Result<Vec<usize>> {
            ids.iter()
                .map(|id| {
                    let spec = lookup(id)?;
                    Ok(match specs.iter().position(|s| s.id == spec.id) {
                        Some(slot) => slot,
                        None => {
                            specs.push(spec);
                            specs.len() - 1
                        }
                    })
                })
                .collect()
        };
        let first = slots_for(&self.pool1)?;
        let second = slots_for(&self.pool2)?;
        Ok((
            specs,
            SlotPools {
                first,
                second,
                ssr: self.ssr,
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Single(StrategySpec),
    Ensemble(PoolConfig),
}

impl Algorithm {
    /// `"gmde"` selects the ensemble with default pools; anything else is a
    /// registry id or strategy notation.
    pub fn from_id(id: &str) -> Result<Self> {
        if id.eq_ignore_ascii_case(ENSEMBLE_ID) {
            Ok(Algorithm::Ensemble(PoolConfig::default()))
        } else {
            Ok(Algorithm::Single(lookup(id)?))
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Algorithm::Single(spec) => &spec.id,
            Algorithm::Ensemble(_) => ENSEMBLE_ID,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dimension: usize,
    pub np: usize,
    pub max_fes: u64,
    pub control: ControlMode,
    pub algorithm: Algorithm,
    pub boundary: BoundaryPolicy,
    pub seed: u64,
    /// Generations between trace samples.
    pub record_every: u64,
}

impl RunConfig {
    pub fn new(dimension: usize, algorithm: Algorithm, seed: u64) -> Self {
        Self {
            dimension,
            np: 50,
            max_fes: dimension as u64 * 10_000,
            control: ControlMode::default(),
            algorithm,
            boundary: BoundaryPolicy::default(),
            seed,
            record_every: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub generation: u64,
    pub used_fes: u64,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub objective: String,
    pub seed: u64,
    pub dimension: usize,
    pub np: usize,
    pub max_fes: u64,
    pub used_fes: u64,
    pub generations: u64,
    pub control: String,
    pub boundary: BoundaryPolicy,
    /// Generations that ran pool 1 and pool 2 (ensemble only).
    pub pool_counts: Option<[u64; 2]>,
    pub trace: Vec<TraceSample>,
    pub best_x: Vec<f64>,
    pub best_fitness: f64,
    /// Wall-clock time; not part of any persisted or compared output.
    pub elapsed: Duration,
}

/// Runs one independent optimization until the budget is spent.
///
/// The trace holds the initial population, every `record_every`-th
/// generation and the final state.
pub fn run<O: Objective + ?Sized>(objective: &O, config: &RunConfig) -> Result<RunRecord> {
    let started = Instant::now();
    if config.dimension != objective.dimension() {
        return Err(Error::config(format!(
            "configured dimension {} but objective `{}` has dimension {}",
            config.dimension,
            objective.name(),
            objective.dimension()
        )));
    }
    if config.record_every == 0 {
        return Err(Error::config("record_every must be at least 1"));
    }
    if config.max_fes < config.np as u64 {
        return Err(Error::BudgetTooSmall {
            max_fes: config.max_fes,
            needed: config.np as u64,
        });
    }
    let (strategies, pools) = match &config.algorithm {
        Algorithm::Single(spec) => (vec![spec.clone()], None),
        Algorithm::Ensemble(pc) => {
            let (specs, pools) = pc.resolve()?;
            (specs, Some(pools))
        }
    };
    let mut evo = Evolution::new(
        objective,
        strategies,
        config.np,
        config.control,
        config.boundary,
        EvalBudget::new(config.max_fes)?,
        RngStream::new(config.seed),
    )?;

    let sample = |evo: &Evolution<'_, O>| TraceSample {
        generation: evo.population().generation(),
        used_fes: evo.budget().used_fes(),
        best_fitness: evo.population().best_fitness(),
    };
    let mut trace = vec![sample(&evo)];
    loop {
        let outcome = match &pools {
            None => evo.step_single(0)?,
            Some(pools) => evo.step_ensemble(pools)?.0,
        };
        let generation = evo.population().generation();
        let last = trace.last().expect("trace starts non-empty").generation;
        if generation != last && generation % config.record_every == 0 {
            trace.push(sample(&evo));
        }
        if outcome == StepOutcome::Exhausted {
            break;
        }
    }
    if trace.last().map(|s| s.generation) != Some(evo.population().generation()) {
        trace.push(sample(&evo));
    }

    let best = evo.population().best();
    Ok(RunRecord {
        algorithm: config.algorithm.id().to_string(),
        objective: objective.name().to_string(),
        seed: config.seed,
        dimension: config.dimension,
        np: config.np,
        max_fes: config.max_fes,
        used_fes: evo.budget().used_fes(),
        generations: evo.population().generation(),
        control: config.control.name().to_string(),
        boundary: config.boundary,
        pool_counts: pools.as_ref().map(|_| evo.pool_counts()),
        trace,
        best_x: best.x.clone(),
        best_fitness: best.key(),
        elapsed: started.elapsed(),
    })
}
