//! Objective contract and function-evaluation accounting.

use crate::error::{Error, Result};
use crate::population::Bounds;

/// A box-constrained cost function. Lower values are better.
///
/// Implementations must be deterministic and callable from several runs at
/// once; every run owns its own budget and random stream.
pub trait Objective: Send + Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    fn evaluate(&self, x: &[f64]) -> f64;

    fn dimension(&self) -> usize {
        self.bounds().dim()
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn bounds(&self) -> &Bounds {
        (**self).bounds()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Adapts a plain closure into an [`Objective`].
pub struct FnObjective<F> {
    name: String,
    bounds: Bounds,
    func: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, bounds: Bounds, func: F) -> Self {
        Self {
            name: name.into(),
            bounds,
            func,
        }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }
}

/// Function-evaluation budget of a single run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    max_fes: u64,
    used_fes: u64,
}

impl EvalBudget {
    pub fn new(max_fes: u64) -> Result<Self> {
        if max_fes == 0 {
            return Err(Error::config("max_fes must be positive"));
        }
        Ok(Self {
            max_fes,
            used_fes: 0,
        })
    }

    pub fn max_fes(&self) -> u64 {
        self.max_fes
    }

    pub fn used_fes(&self) -> u64 {
        self.used_fes
    }

    pub fn remaining(&self) -> u64 {
        self.max_fes - self.used_fes
    }

    pub fn is_exhausted(&self) -> bool {
        self.used_fes >= self.max_fes
    }

    /// Evaluates `x`, charging exactly one evaluation. Fails without calling
    /// the objective once the budget is spent.
    pub fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O, x: &[f64]) -> Result<f64> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted {
                used: self.used_fes,
            });
        }
        self.used_fes += 1;
        Ok(objective.evaluate(x))
    }
}
