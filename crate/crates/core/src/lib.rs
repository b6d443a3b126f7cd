//! Differential evolution built around a generalized mutation constructor.
//!
//! A mutation strategy is written as a base block plus an ordered list of
//! difference pairs, `V = X_base + Σ F_j · (X_plus_j − X_minus_j)`, where every
//! block names a population-member role (random, best, current, top-p%, ...).
//! The classic `DE/x/y` strategies are particular instances, and the GMDE
//! ensemble runs two pools of such strategies behind a per-generation gate.
//!
//! Module map:
//!
//! - [`population`], [`objective`], [`rng`]: individuals, populations, the
//!   objective contract, evaluation budgets and seeded randomness.
//! - [`mutation`]: block vocabulary, role sampling, donor construction, the
//!   strategy registry and the textual strategy notation.
//! - [`control`]: jDE self-adaptation and fixed parameters.
//! - [`engine`]: crossover, boundary repair, selection and the run loop.
//! - [`bench`]: shifted/rotated benchmark functions with generated data.
//! - [`stats`]: run summaries and the Wilcoxon signed-rank comparison.

pub mod bench;
pub mod control;
pub mod engine;
mod error;
pub mod mutation;
pub mod objective;
pub mod population;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use objective::{EvalBudget, FnObjective, Objective};
pub use population::{Bounds, Individual, Population, ScalingFactors};
pub use rng::RngStream;
