//! The generalized mutation constructor.
//!
//! A donor vector is assembled as
//!
//! ```text
//! V = X_base + Σ_j F_j · (X_plus_j − X_minus_j)
//! ```
//!
//! where each `X` is a population member picked by a [`Block`]. Choosing the
//! blocks yields the classic strategies (`DE/rand/1` is `rand + F·(rand − rand)`)
//! as well as new ones such as `rand + F·(best − rand)`.
//!
//! Selection schemes from the literature that pick parents by proximity,
//! fitness-distance ratio or rank are not part of the block vocabulary.

mod notation;
mod registry;
mod roles;

pub use notation::{parse_spec, render_spec};
pub use registry::{classic_ids, enumerate_family, lookup, registry, DEFAULT_SWEEP_BLOCKS};
pub use roles::{sample_roles, RoleAssignment};

use crate::error::{Error, Result};
use crate::population::Population;
use crate::rng::RngStream;

/// Fraction used by `top`/`worst` blocks written without an explicit value.
pub const DEFAULT_P: f64 = 0.1;

/// Role a population member plays in a strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    /// Uniform random member, distinct from the target and every other role.
    Rand,
    /// The current best member.
    Best,
    /// The target member itself.
    Current,
    /// The member already chosen as base vector. Only valid inside a
    /// difference pair.
    BaseEcho,
    /// Uniform pick among the `ceil(p·NP)` best-ranked members.
    TopP(f64),
    /// Uniform pick among the `ceil(p·NP)` worst-ranked members.
    WorstP(f64),
    /// Fittest of `k` distinct uniform picks.
    Tournament(usize),
}

impl Block {
    fn validate(&self) -> Result<()> {
        match *self {
            Block::TopP(p) | Block::WorstP(p) if !(p > 0.0 && p <= 1.0) => Err(Error::config(
                format!("top/worst fraction must lie in (0, 1], got {p}"),
            )),
            Block::Tournament(k) if k < 2 => Err(Error::config(format!(
                "tournament size must be at least 2, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    /// Blocks that pick a specific member from fitness information.
    fn is_selective(&self) -> bool {
        matches!(
            self,
            Block::Best | Block::TopP(_) | Block::WorstP(_) | Block::Tournament(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffPair {
    pub plus: Block,
    pub minus: Block,
}

impl DiffPair {
    pub const fn new(plus: Block, minus: Block) -> Self {
        Self { plus, minus }
    }
}

/// How the per-difference coefficients are formed from the scaling factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientMode {
    /// Difference `j` is scaled by `F_j`.
    #[default]
    Standard,
    /// Difference 0 is scaled by a fresh `k ~ U(0,1)`, every later
    /// difference `j` by `k · F_j` (`DE/current-to-rand/1`).
    CurrentToRand,
}

/// A mutation strategy: base block plus ordered difference pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategySpec {
    pub id: String,
    pub base: Block,
    pub diffs: Vec<DiffPair>,
    pub mode: CoefficientMode,
}

impl StrategySpec {
    pub fn new(
        id: impl Into<String>,
        base: Block,
        diffs: Vec<DiffPair>,
        mode: CoefficientMode,
    ) -> Result<Self> {
        let spec = Self {
            id: id.into(),
            base,
            diffs,
            mode,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        // Ids with a parenthesis are only allowed as the spec's own notation.
        if self.id.is_empty() || (self.id.contains('(') && self.id != notation::render_body(self)) {
            return Err(Error::config(format!("invalid strategy id `{}`", self.id)));
        }
        if self.diffs.is_empty() {
            return Err(Error::config(format!(
                "strategy `{}` needs at least one difference pair",
                self.id
            )));
        }
        if self.base == Block::BaseEcho {
            return Err(Error::config("`base` cannot be used as the base block"));
        }
        self.blocks().try_for_each(|b| b.validate())
    }

    pub fn n_diffs(&self) -> usize {
        self.diffs.len()
    }

    /// All blocks in declaration order: base, then each pair's plus and minus.
    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        std::iter::once(self.base).chain(self.diffs.iter().flat_map(|d| [d.plus, d.minus]))
    }

    pub fn rand_count(&self) -> usize {
        self.blocks().filter(|b| *b == Block::Rand).count()
    }

    /// Smallest population for which distinct role sampling is always
    /// feasible: the target, every random role, and every selective role may
    /// each need their own member.
    pub fn min_population(&self) -> usize {
        let mut selective = 0;
        let mut has_best = false;
        for b in self.blocks() {
            match b {
                Block::Best => has_best = true,
                b if b.is_selective() => selective += 1,
                _ => {}
            }
        }
        1 + self.rand_count() + selective + usize::from(has_best)
    }

    /// Coefficients multiplying each difference, given per-difference scaling
    /// factors. Draws from `rng` only in [`CoefficientMode::CurrentToRand`].
    pub fn coefficients(&self, f: &[f64], rng: &mut RngStream) -> Vec<f64> {
        assert_eq!(
            f.len(),
            self.diffs.len(),
            "one scaling factor per difference pair"
        );
        match self.mode {
            CoefficientMode::Standard => f.to_vec(),
            CoefficientMode::CurrentToRand => {
                let k = rng.uniform();
                std::iter::once(k)
                    .chain(f[1..].iter().map(|fj| k * fj))
                    .collect()
            }
        }
    }
}

impl std::fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_spec(self))
    }
}

/// Writes `X_base + Σ c_j (X_plus_j − X_minus_j)` into `out`. Not
/// bound-repaired.
pub fn donor_from_coefficients_into(
    roles: &RoleAssignment,
    pop: &Population,
    coefficients: &[f64],
    out: &mut Vec<f64>,
) {
    assert_eq!(roles.diffs.len(), coefficients.len());
    out.clear();
    out.extend_from_slice(pop.x(roles.base));
    for (&(plus, minus), &c) in roles.diffs.iter().zip(coefficients) {
        let xp = pop.x(plus);
        let xm = pop.x(minus);
        for ((v, p), m) in out.iter_mut().zip(xp).zip(xm) {
            *v += c * (p - m);
        }
    }
}

pub fn donor_from_coefficients(
    roles: &RoleAssignment,
    pop: &Population,
    coefficients: &[f64],
) -> Vec<f64> {
    let mut out = Vec::with_capacity(pop.x(0).len());
    donor_from_coefficients_into(roles, pop, coefficients, &mut out);
    out
}

/// Donor vector for resolved roles and per-difference scaling factors `f`.
pub fn donor(
    spec: &StrategySpec,
    roles: &RoleAssignment,
    pop: &Population,
    f: &[f64],
    rng: &mut RngStream,
) -> Vec<f64> {
    let coefficients = spec.coefficients(f, rng);
    donor_from_coefficients(roles, pop, &coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Individual;
    use std::sync::Arc;

    fn pop_of(points: &[&[f64]]) -> Population {
        let ids: Arc<[String]> = Arc::from(vec!["s".to_string()]);
        let members = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut m = Individual::new(p.to_vec(), Arc::clone(&ids));
                m.fitness = Some(i as f64);
                m
            })
            .collect();
        Population::from_members(members).unwrap()
    }

    #[test]
    fn donor_arithmetic() {
        let pop = pop_of(&[&[1.0, 1.0], &[2.0, 2.0], &[0.0, 0.0]]);
        let roles = RoleAssignment {
            base: 0,
            diffs: vec![(1, 2)],
        };
        assert_eq!(donor_from_coefficients(&roles, &pop, &[0.5]), vec![2.0, 2.0]);
    }

    #[test]
    fn zero_difference_returns_base() {
        let pop = pop_of(&[&[1.5, -3.0], &[7.0, 8.0], &[7.0, 8.0]]);
        let roles = RoleAssignment {
            base: 0,
            diffs: vec![(1, 2), (2, 1)],
        };
        assert_eq!(
            donor_from_coefficients(&roles, &pop, &[0.9, 0.3]),
            vec![1.5, -3.0]
        );
    }

    #[test]
    fn rand2_cancellation() {
        let spec = lookup("GMDE#6").unwrap();
        let pop = pop_of(&[&[0.0], &[4.0], &[2.0]]);
        let roles = RoleAssignment {
            base: 0,
            diffs: vec![(1, 2), (2, 1)],
        };
        let mut rng = RngStream::new(0);
        assert_eq!(donor(&spec, &roles, &pop, &[0.5, 0.5], &mut rng), vec![0.0]);
    }

    #[test]
    fn current_to_rand_coefficients() {
        let spec = lookup("GMDE#15").unwrap();
        let mut rng = RngStream::new(4);
        let mut probe = RngStream::new(4);
        let c = spec.coefficients(&[0.7, 0.7], &mut rng);
        let k = probe.uniform();
        assert_eq!(c, vec![k, k * 0.7]);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(StrategySpec::new("x", Block::Rand, vec![], CoefficientMode::Standard).is_err());
        assert!(StrategySpec::new(
            "x",
            Block::BaseEcho,
            vec![DiffPair::new(Block::Rand, Block::Rand)],
            CoefficientMode::Standard
        )
        .is_err());
        assert!(StrategySpec::new(
            "x",
            Block::TopP(0.0),
            vec![DiffPair::new(Block::Rand, Block::Rand)],
            CoefficientMode::Standard
        )
        .is_err());
        assert!(StrategySpec::new(
            "x",
            Block::Rand,
            vec![DiffPair::new(Block::Tournament(1), Block::Rand)],
            CoefficientMode::Standard
        )
        .is_err());
    }

    #[test]
    fn min_population_counts_roles() {
        assert_eq!(lookup("GMDE#1").unwrap().min_population(), 4);
        assert_eq!(lookup("GMDE#6").unwrap().min_population(), 6);
        assert_eq!(lookup("GMDE#2").unwrap().min_population(), 4);
        assert_eq!(lookup("GMDE#11").unwrap().min_population(), 5);
        assert_eq!(lookup("GMDE#15").unwrap().min_population(), 4);
    }
}
