//! Parameter control: jDE self-adaptation of F and Cr, or fixed values.
//!
//! jDE regenerates an individual's scaling factor with probability `tau1` as
//! `F = f_l + rand · f_u` and its crossover rate with probability `tau2` as a
//! fresh uniform draw. With the default constants the regenerated F lies in
//! `[0.1, 1.0]`. Proposals only survive when the trial they produced wins
//! selection.

use crate::error::{Error, Result};
use crate::population::Individual;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JdeConfig {
    pub tau1: f64,
    pub tau2: f64,
    pub f_l: f64,
    pub f_u: f64,
}

impl Default for JdeConfig {
    fn default() -> Self {
        Self {
            tau1: 0.1,
            tau2: 0.1,
            f_l: 0.1,
            f_u: 0.9,
        }
    }
}

impl JdeConfig {
    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::config(format!("jDE {name} must lie in [0, 1], got {v}")))
            }
        };
        prob("tau1", self.tau1)?;
        prob("tau2", self.tau2)?;
        if !(self.f_l > 0.0 && self.f_u >= 0.0 && self.f_l + self.f_u <= 2.0) {
            return Err(Error::config(format!(
                "jDE F range [{}, {}] must lie in (0, 2]",
                self.f_l,
                self.f_l + self.f_u
            )));
        }
        Ok(())
    }

    /// Closed range every regenerated F falls into.
    pub fn f_range(&self) -> (f64, f64) {
        (self.f_l, self.f_l + self.f_u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlMode {
    Fixed { f: f64, cr: f64 },
    Jde(JdeConfig),
}

impl Default for ControlMode {
    fn default() -> Self {
        ControlMode::Jde(JdeConfig::default())
    }
}

impl ControlMode {
    /// Preprocess-phase constants.
    pub const PREPROCESS: ControlMode = ControlMode::Fixed { f: 0.5, cr: 0.9 };

    pub fn validate(&self) -> Result<()> {
        match *self {
            ControlMode::Fixed { f, cr } => {
                if !(f > 0.0 && f <= 2.0) {
                    return Err(Error::config(format!("fixed F must lie in (0, 2], got {f}")));
                }
                if !(0.0..=1.0).contains(&cr) {
                    return Err(Error::config(format!("fixed Cr must lie in [0, 1], got {cr}")));
                }
                Ok(())
            }
            ControlMode::Jde(cfg) => cfg.validate(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ControlMode::Fixed { .. } => "fixed",
            ControlMode::Jde(_) => "jde",
        }
    }
}

pub fn propose_f(current_f: f64, cfg: &JdeConfig, rng: &mut RngStream) -> f64 {
    if rng.uniform() < cfg.tau1 {
        cfg.f_l + rng.uniform() * cfg.f_u
    } else {
        current_f
    }
}

pub fn propose_cr(current_cr: f64, cfg: &JdeConfig, rng: &mut RngStream) -> f64 {
    if rng.uniform() < cfg.tau2 {
        rng.uniform()
    } else {
        current_cr
    }
}

/// Parameters proposed for one individual in one generation: a scaling
/// factor for each strategy slot that ran, and one shared crossover rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub f: Vec<(usize, f64)>,
    pub cr: f64,
}

impl Proposal {
    pub fn f_for(&self, slot: usize) -> Option<f64> {
        self.f.iter().find(|(s, _)| *s == slot).map(|&(_, f)| f)
    }
}

/// On acceptance the winning slot's F and the shared Cr are stored; every
/// other proposal is dropped. On rejection nothing changes.
pub fn commit_or_revert(
    ind: &mut Individual,
    proposal: &Proposal,
    trial_accepted: bool,
    winning_slot: usize,
) {
    if !trial_accepted {
        return;
    }
    if let Some(f) = proposal.f_for(winning_slot) {
        ind.scaling.set_slot(winning_slot, f);
    }
    ind.cr = proposal.cr;
}
