use super::{Block, StrategySpec};
use crate::error::{Error, Result};
use crate::population::Population;
use crate::rng::RngStream;

/// Population indices resolved for every block of a strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleAssignment {
    pub base: usize,
    /// `(plus, minus)` index per difference pair.
    pub diffs: Vec<(usize, usize)>,
}

impl RoleAssignment {
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.base).chain(self.diffs.iter().flat_map(|&(p, m)| [p, m]))
    }
}

/// Resolves every block of `spec` for the member at `target`.
///
/// Fixed and selective blocks (`best`, `current`, `top`, `worst`, `tour`) are
/// resolved first, in declaration order. Random blocks are then drawn
/// uniformly, distinct from each other, from the target, and from every
/// index resolved before them. `base` echoes the base index.
pub fn sample_roles(
    spec: &StrategySpec,
    pop: &Population,
    target: usize,
    rng: &mut RngStream,
) -> Result<RoleAssignment> {
    let np = pop.len();
    let needed = spec.min_population();
    if np < needed {
        return Err(Error::config(format!(
            "strategy `{}` needs a population of at least {needed}, got {np}",
            spec.id
        )));
    }
    assert!(target < np, "target {target} out of range for population {np}");

    let blocks: Vec<Block> = spec.blocks().collect();
    let mut resolved: Vec<Option<usize>> = vec![None; blocks.len()];
    let mut taken: Vec<usize> = Vec::with_capacity(blocks.len() + 1);
    taken.push(target);

    let mut ranking: Option<Vec<usize>> = None;
    for (slot, block) in blocks.iter().enumerate() {
        let idx = match *block {
            Block::Best => pop.best_index(),
            Block::Current => target,
            Block::TopP(p) => {
                let order = ranking.get_or_insert_with(|| pop.ranking());
                order[rng.below(fraction_count(p, np))]
            }
            Block::WorstP(p) => {
                let order = ranking.get_or_insert_with(|| pop.ranking());
                order[np - 1 - rng.below(fraction_count(p, np))]
            }
            Block::Tournament(k) => tournament(pop, k.min(np), rng),
            Block::Rand | Block::BaseEcho => continue,
        };
        resolved[slot] = Some(idx);
        if !taken.contains(&idx) {
            taken.push(idx);
        }
    }

    for (slot, block) in blocks.iter().enumerate() {
        if *block != Block::Rand {
            continue;
        }
        let idx = loop {
            let candidate = rng.below(np);
            if !taken.contains(&candidate) {
                break candidate;
            }
        };
        taken.push(idx);
        resolved[slot] = Some(idx);
    }

    let base = resolved[0].expect("base block is never an echo");
    let index_of = |slot: usize| match blocks[slot] {
        Block::BaseEcho => base,
        _ => resolved[slot].expect("every block resolved"),
    };
    let diffs = (0..spec.diffs.len())
        .map(|j| (index_of(1 + 2 * j), index_of(2 + 2 * j)))
        .collect();
    Ok(RoleAssignment { base, diffs })
}

fn fraction_count(p: f64, np: usize) -> usize {
    ((p * np as f64).ceil() as usize).clamp(1, np)
}

fn tournament(pop: &Population, k: usize, rng: &mut RngStream) -> usize {
    rng.distinct_indices(pop.len(), k)
        .into_iter()
        .min_by(|&a, &b| {
            pop.member(a)
                .key()
                .total_cmp(&pop.member(b).key())
                .then(a.cmp(&b))
        })
        .expect("tournament size is at least one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{lookup, CoefficientMode, DiffPair};
    use crate::population::Individual;
    use std::sync::Arc;

    fn ranked_pop(np: usize) -> Population {
        let ids: Arc<[String]> = Arc::from(vec!["s".to_string()]);
        // Fitness of member i is (i * 7) % np, so ranks are scrambled.
        let members = (0..np)
            .map(|i| {
                let mut m = Individual::new(vec![i as f64], Arc::clone(&ids));
                m.fitness = Some(((i * 7) % np) as f64);
                m
            })
            .collect();
        Population::from_members(members).unwrap()
    }

    #[test]
    fn rand1_roles_distinct_from_target() {
        let spec = lookup("GMDE#1").unwrap();
        let pop = ranked_pop(50);
        let mut rng = RngStream::new(1);
        for _ in 0..1000 {
            let roles = sample_roles(&spec, &pop, 7, &mut rng).unwrap();
            let mut idx: Vec<usize> = roles.indices().collect();
            assert_eq!(idx.len(), 3);
            assert!(idx.iter().all(|&i| i != 7));
            idx.sort_unstable();
            idx.dedup();
            assert_eq!(idx.len(), 3);
        }
    }

    #[test]
    fn best_may_coincide_with_target() {
        let spec = lookup("GMDE#2").unwrap();
        let pop = ranked_pop(10);
        let best = pop.best_index();
        let mut rng = RngStream::new(2);
        let roles = sample_roles(&spec, &pop, best, &mut rng).unwrap();
        assert_eq!(roles.base, best);
        assert!(roles.diffs[0].0 != best && roles.diffs[0].1 != best);
    }

    #[test]
    fn infeasible_population_is_config_error() {
        let spec = lookup("GMDE#6").unwrap();
        let pop = ranked_pop(3);
        let mut rng = RngStream::new(0);
        assert!(matches!(
            sample_roles(&spec, &pop, 0, &mut rng),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn echo_and_current_resolve_to_fixed_members() {
        let pop = ranked_pop(20);
        let mut rng = RngStream::new(3);
        let rtb = lookup("GMDE#7").unwrap();
        let roles = sample_roles(&rtb, &pop, 4, &mut rng).unwrap();
        assert_eq!(roles.diffs[0], (pop.best_index(), roles.base));
        let ctr = lookup("GMDE#15").unwrap();
        let roles = sample_roles(&ctr, &pop, 4, &mut rng).unwrap();
        assert_eq!(roles.base, 4);
        assert_eq!(roles.diffs[0].1, 4);
    }

    #[test]
    fn top_and_worst_pick_from_ranked_slices() {
        let pop = ranked_pop(50);
        let order = pop.ranking();
        let top: Vec<usize> = order[..5].to_vec();
        let worst: Vec<usize> = order[45..].to_vec();
        let spec = StrategySpec::new(
            "tw",
            Block::TopP(0.1),
            vec![DiffPair::new(Block::WorstP(0.1), Block::Rand)],
            CoefficientMode::Standard,
        )
        .unwrap();
        let mut rng = RngStream::new(8);
        let mut seen_top = std::collections::BTreeSet::new();
        for t in 0..2000 {
            let roles = sample_roles(&spec, &pop, t % 50, &mut rng).unwrap();
            assert!(top.contains(&roles.base));
            assert!(worst.contains(&roles.diffs[0].0));
            seen_top.insert(roles.base);
        }
        assert_eq!(seen_top.len(), 5);
    }

    #[test]
    fn tournament_returns_fittest_of_sample() {
        let pop = ranked_pop(10);
        let mut rng = RngStream::new(5);
        let spec = StrategySpec::new(
            "t",
            Block::Tournament(10),
            vec![DiffPair::new(Block::Rand, Block::Rand)],
            CoefficientMode::Standard,
        )
        .unwrap();
        // k == NP: the whole population enters, the winner is the best.
        let roles = sample_roles(&spec, &pop, 3, &mut rng).unwrap();
        assert_eq!(roles.base, pop.best_index());
    }
}
