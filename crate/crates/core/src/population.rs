//! Individuals, populations and their initialization.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::objective::{EvalBudget, Objective};
use crate::rng::RngStream;

/// Scaling factor every strategy slot starts from before self-adaptation.
pub const INITIAL_F: f64 = 0.5;
/// Crossover rate every individual starts from before self-adaptation.
pub const INITIAL_CR: f64 = 0.9;
/// Smallest population the engine accepts.
pub const MIN_POPULATION: usize = 5;

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBounds("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            // Also rejects NaN.
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidBounds(format!(
                    "coordinate {i}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect()
    }
}

/// Per-strategy scaling factors of one individual.
///
/// Strategy ids are shared by every member of a population; values are stored
/// by slot, in the order the ids were declared.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFactors {
    ids: Arc<[String]>,
    values: Vec<f64>,
}

impl ScalingFactors {
    pub fn new(ids: Arc<[String]>, initial: f64) -> Self {
        let values = vec![initial; ids.len()];
        Self { ids, values }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn slot_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.slot_of(id).map(|slot| self.values[slot])
    }

    pub fn slot(&self, slot: usize) -> f64 {
        self.values[slot]
    }

    pub fn set_slot(&mut self, slot: usize, value: f64) {
        self.values[slot] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.ids.iter().map(String::as_str).zip(self.values.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: Vec<f64>,
    /// `None` until the individual has been evaluated.
    pub fitness: Option<f64>,
    pub scaling: ScalingFactors,
    pub cr: f64,
}

impl Individual {
    pub fn new(x: Vec<f64>, strategy_ids: Arc<[String]>) -> Self {
        Self {
            x,
            fitness: None,
            scaling: ScalingFactors::new(strategy_ids, INITIAL_F),
            cr: INITIAL_CR,
        }
    }

    /// Sort key used for every fitness comparison: unevaluated, NaN and +inf
    /// all rank as the worst possible value.
    pub fn key(&self) -> f64 {
        fitness_key(self.fitness)
    }
}

pub fn fitness_key(fitness: Option<f64>) -> f64 {
    match fitness {
        Some(f) if !f.is_nan() => f,
        _ => f64::INFINITY,
    }
}

/// Evaluates `ind` in place, charging one evaluation to `budget`.
pub fn evaluate<O: Objective + ?Sized>(
    ind: &mut Individual,
    objective: &O,
    budget: &mut EvalBudget,
) -> Result<f64> {
    let f = budget.evaluate(objective, &ind.x)?;
    ind.fitness = Some(f);
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    generation: u64,
    best_index: usize,
}

impl Population {
    /// Wraps already-evaluated members.
    pub fn from_members(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config("population must not be empty"));
        }
        let mut pop = Self {
            members,
            generation: 0,
            best_index: 0,
        };
        pop.recompute_best();
        Ok(pop)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Individual {
        &self.members[i]
    }

    pub fn member_mut(&mut self, i: usize) -> &mut Individual {
        &mut self.members[i]
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.members[i].x
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub(crate) fn advance_generation(&mut self) {
        self.generation += 1;
    }

    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index]
    }

    pub fn best_fitness(&self) -> f64 {
        self.best().key()
    }

    /// Replaces member `i` with a strictly better solution and keeps
    /// `best_index` current.
    pub(crate) fn replace(&mut self, i: usize, x: &[f64], fitness: f64) {
        let m = &mut self.members[i];
        m.x.copy_from_slice(x);
        m.fitness = Some(fitness);
        let key = fitness_key(Some(fitness));
        let best_key = self.members[self.best_index].key();
        if key < best_key || (key == best_key && i < self.best_index) {
            self.best_index = i;
        }
    }

    /// Ties resolve to the lowest index.
    pub fn recompute_best(&mut self) {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate().skip(1) {
            if m.key() < self.members[best].key() {
                best = i;
            }
        }
        self.best_index = best;
    }

    /// Member indices sorted from best to worst, ties by index.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.members.len()).collect();
        order.sort_by(|&a, &b| {
            self.members[a]
                .key()
                .total_cmp(&self.members[b].key())
                .then(a.cmp(&b))
        });
        order
    }
}

/// Draws `np` members uniformly inside `bounds` and evaluates each once.
///
/// Every member starts with `INITIAL_F` for each id in `strategy_ids` and
/// `INITIAL_CR` as crossover rate.
pub fn init_population<O: Objective + ?Sized>(
    bounds: &Bounds,
    np: usize,
    strategy_ids: &Arc<[String]>,
    rng: &mut RngStream,
    objective: &O,
    budget: &mut EvalBudget,
) -> Result<Population> {
    if np < MIN_POPULATION {
        return Err(Error::config(format!(
            "population size {np} is below the minimum of {MIN_POPULATION}"
        )));
    }
    if budget.remaining() < np as u64 {
        return Err(Error::BudgetTooSmall {
            max_fes: budget.max_fes(),
            needed: budget.used_fes() + np as u64,
        });
    }
    let mut members: Vec<Individual> = (0..np)
        .map(|_| Individual::new(bounds.sample(rng), Arc::clone(strategy_ids)))
        .collect();
    for m in &mut members {
        evaluate(m, objective, budget)?;
    }
    Population::from_members(members)
}
