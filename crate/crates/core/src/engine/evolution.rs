use std::sync::Arc;

use super::operators::{binomial_crossover_into, repair_bounds_in_place, trial_wins, BoundaryPolicy};
use crate::control::{commit_or_revert, propose_cr, propose_f, ControlMode, Proposal};
use crate::error::{Error, Result};
use crate::mutation::{donor_from_coefficients_into, sample_roles, StrategySpec};
use crate::objective::{EvalBudget, Objective};
use crate::population::{fitness_key, init_population, Bounds, Population};
use crate::rng::RngStream;

/// Which of the two strategy pools a generation ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolChoice {
    First,
    Second,
}

/// Pool gate: draws `rand ∈ (0, 1)` and picks the first pool when
/// `rand ≤ ssr`.
pub fn select_pool(ssr: f64, rng: &mut RngStream) -> PoolChoice {
    if rng.open01() <= ssr {
        PoolChoice::First
    } else {
        PoolChoice::Second
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    /// Every member was processed and budget remains.
    Completed,
    /// The budget ran out, possibly part-way through the generation.
    Exhausted,
}

/// Strategy pools expressed as slots into [`Evolution::strategies`].
#[derive(Debug, Clone, PartialEq)]
pub struct SlotPools {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub ssr: f64,
}

/// State of one run: population, budget, random stream and operators.
///
/// Members are updated in place as soon as their trial wins, so later members
/// of the same generation already see earlier replacements.
pub struct Evolution<'o, O: Objective + ?Sized> {
    objective: &'o O,
    bounds: Bounds,
    population: Population,
    budget: EvalBudget,
    rng: RngStream,
    control: ControlMode,
    boundary: BoundaryPolicy,
    strategies: Vec<StrategySpec>,
    pool_counts: [u64; 2],
    donor: Vec<f64>,
    trial: Vec<f64>,
    best_trial: Vec<f64>,
}

impl<'o, O: Objective + ?Sized> Evolution<'o, O> {
    /// Initializes and evaluates the population. `strategies` fixes the slot
    /// order of every member's scaling factors.
    pub fn new(
        objective: &'o O,
        strategies: Vec<StrategySpec>,
        np: usize,
        control: ControlMode,
        boundary: BoundaryPolicy,
        mut budget: EvalBudget,
        mut rng: RngStream,
    ) -> Result<Self> {
        control.validate()?;
        if strategies.is_empty() {
            return Err(Error::config("at least one strategy is required"));
        }
        for s in &strategies {
            s.validate()?;
            if np < s.min_population() {
                return Err(Error::config(format!(
                    "strategy `{}` needs a population of at least {}, got {np}",
                    s.id,
                    s.min_population()
                )));
            }
        }
        let ids: Arc<[String]> = strategies.iter().map(|s| s.id.clone()).collect();
        let bounds = objective.bounds().clone();
        let population = init_population(&bounds, np, &ids, &mut rng, objective, &mut budget)?;
        let dim = bounds.dim();
        Ok(Self {
            objective,
            bounds,
            population,
            budget,
            rng,
            control,
            boundary,
            strategies,
            pool_counts: [0; 2],
            donor: Vec::with_capacity(dim),
            trial: Vec::with_capacity(dim),
            best_trial: Vec::with_capacity(dim),
        })
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn strategies(&self) -> &[StrategySpec] {
        &self.strategies
    }

    pub fn slot_of(&self, id: &str) -> Option<usize> {
        self.strategies.iter().position(|s| s.id == id)
    }

    /// How many generations ran the first and the second pool.
    pub fn pool_counts(&self) -> [u64; 2] {
        self.pool_counts
    }

    /// One generation of classic single-strategy DE using strategy `slot`.
    pub fn step_single(&mut self, slot: usize) -> Result<StepOutcome> {
        assert!(slot < self.strategies.len(), "unknown strategy slot {slot}");
        self.generation(&[slot])
    }

    /// One ensemble generation: the gate picks a pool, then every member
    /// runs all strategies of that pool and keeps the best trial.
    pub fn step_ensemble(&mut self, pools: &SlotPools) -> Result<(StepOutcome, Option<PoolChoice>)> {
        if self.budget.is_exhausted() {
            return Ok((StepOutcome::Exhausted, None));
        }
        let choice = select_pool(pools.ssr, &mut self.rng);
        let slots = match choice {
            PoolChoice::First => &pools.first,
            PoolChoice::Second => &pools.second,
        };
        self.pool_counts[choice as usize] += 1;
        Ok((self.generation(slots)?, Some(choice)))
    }

    fn generation(&mut self, slots: &[usize]) -> Result<StepOutcome> {
        if self.budget.is_exhausted() {
            return Ok(StepOutcome::Exhausted);
        }
        for i in 0..self.population.len() {
            if self.budget.is_exhausted() {
                break;
            }
            self.evolve_member(i, slots)?;
        }
        self.population.advance_generation();
        Ok(if self.budget.is_exhausted() {
            StepOutcome::Exhausted
        } else {
            StepOutcome::Completed
        })
    }

    fn evolve_member(&mut self, i: usize, slots: &[usize]) -> Result<()> {
        let cr = match &self.control {
            ControlMode::Fixed { cr, .. } => *cr,
            ControlMode::Jde(cfg) => propose_cr(self.population.member(i).cr, cfg, &mut self.rng),
        };
        let mut proposal = Proposal {
            f: Vec::with_capacity(slots.len()),
            cr,
        };
        // (fitness, slot) of the best trial so far; ties keep the earlier slot.
        let mut best: Option<(f64, usize)> = None;
        let mut factors: Vec<f64> = Vec::new();

        for &slot in slots {
            if self.budget.is_exhausted() {
                break;
            }
            let f = match &self.control {
                ControlMode::Fixed { f, .. } => *f,
                ControlMode::Jde(cfg) => {
                    propose_f(self.population.member(i).scaling.slot(slot), cfg, &mut self.rng)
                }
            };
            proposal.f.push((slot, f));

            let spec = &self.strategies[slot];
            let roles = sample_roles(spec, &self.population, i, &mut self.rng)?;
            factors.clear();
            factors.resize(spec.n_diffs(), f);
            let coefficients = spec.coefficients(&factors, &mut self.rng);
            donor_from_coefficients_into(&roles, &self.population, &coefficients, &mut self.donor);
            repair_bounds_in_place(&mut self.donor, &self.bounds, self.boundary, &mut self.rng);
            binomial_crossover_into(
                self.population.x(i),
                &self.donor,
                cr,
                &mut self.rng,
                &mut self.trial,
            );
            let fitness = self.budget.evaluate(self.objective, &self.trial)?;
            let better = best.is_none_or(|(b, _)| fitness_key(Some(fitness)) < fitness_key(Some(b)));
            if better {
                best = Some((fitness, slot));
                std::mem::swap(&mut self.trial, &mut self.best_trial);
            }
        }

        let Some((fitness, slot)) = best else {
            return Ok(());
        };
        let accepted = trial_wins(self.population.member(i).fitness, Some(fitness));
        if accepted {
            self.population.replace(i, &self.best_trial, fitness);
        }
        if matches!(self.control, ControlMode::Jde(_)) {
            commit_or_revert(self.population.member_mut(i), &proposal, accepted, slot);
        }
        Ok(())
    }
}
