//! Named strategies: the classic `DE/x/y` equations and GMDE#1-#16.
//!
//! | id       | base    | differences                      | alias                  |
//! |----------|---------|----------------------------------|------------------------|
//! | GMDE#1   | rand    | (rand − rand)                    | DE/rand/1              |
//! | GMDE#2   | best    | (rand − rand)                    | DE/best/1              |
//! | GMDE#3   | rand    | (best − current)                 |                        |
//! | GMDE#4   | rand    | (best − rand)                    |                        |
//! | GMDE#5   | best    | (rand − current)                 |                        |
//! | GMDE#6   | rand    | (rand − rand), (rand − rand)     | DE/rand/2              |
//! | GMDE#7   | rand    | (best − base), (rand − rand)     | DE/rand-to-best/1      |
//! | GMDE#8   | best    | (rand − rand), (rand − rand)     | DE/best/2              |
//! | GMDE#9   | best    | (rand − best), (rand − rand)     |                        |
//! | GMDE#10  | best    | (rand − current), (rand − rand)  |                        |
//! | GMDE#11  | best    | (best − rand), (rand − rand)     |                        |
//! | GMDE#12  | best    | (best − current), (rand − rand)  |                        |
//! | GMDE#13  | best    | (current − rand), (rand − rand)  |                        |
//! | GMDE#14  | best    | (current − best), (rand − rand)  |                        |
//! | GMDE#15  | current | k·(rand − current), k·F·(rand − rand) | DE/current-to-rand/1 |
//! | GMDE#16  | current | (best − current), (rand − rand)  | DE/current-to-best/1   |
//!
//! For the two-difference entries the first pair is the strategy-specific
//! one and the second pair is always `(rand − rand)`. In GMDE#7 the minus
//! element of the first pair is the base vector itself, so the difference
//! reads `(X_best − X_r1)`.

use super::{Block, CoefficientMode, DiffPair, StrategySpec};
use crate::error::{Error, Result};

use Block::{Best, Current, Rand};

/// Block set swept when enumerating strategy families, in the order that
/// fixes the family's numbering.
pub const DEFAULT_SWEEP_BLOCKS: [Block; 3] = [Rand, Best, Current];

const RR: DiffPair = DiffPair::new(Rand, Rand);

fn spec(id: &str, base: Block, diffs: &[DiffPair], mode: CoefficientMode) -> StrategySpec {
    StrategySpec::new(id, base, diffs.to_vec(), mode).expect("registry entries are valid")
}

fn std_spec(id: &str, base: Block, diffs: &[DiffPair]) -> StrategySpec {
    spec(id, base, diffs, CoefficientMode::Standard)
}

/// Ids of the classic equations, in equation order.
pub fn classic_ids() -> [&'static str; 7] {
    [
        "DE/rand/1",
        "DE/best/1",
        "DE/rand/2",
        "DE/best/2",
        "DE/current-to-best/1",
        "DE/rand-to-best/1",
        "DE/current-to-rand/1",
    ]
}

pub fn registry() -> Vec<StrategySpec> {
    let d = DiffPair::new;
    let ctr = CoefficientMode::CurrentToRand;
    vec![
        std_spec("DE/rand/1", Rand, &[RR]),
        std_spec("DE/best/1", Best, &[RR]),
        std_spec("DE/rand/2", Rand, &[RR, RR]),
        std_spec("DE/best/2", Best, &[RR, RR]),
        std_spec("DE/current-to-best/1", Current, &[d(Best, Current), RR]),
        std_spec("DE/rand-to-best/1", Rand, &[d(Best, Block::BaseEcho), RR]),
        spec("DE/current-to-rand/1", Current, &[d(Rand, Current), RR], ctr),
        std_spec("GMDE#1", Rand, &[RR]),
        std_spec("GMDE#2", Best, &[RR]),
        std_spec("GMDE#3", Rand, &[d(Best, Current)]),
        std_spec("GMDE#4", Rand, &[d(Best, Rand)]),
        std_spec("GMDE#5", Best, &[d(Rand, Current)]),
        std_spec("GMDE#6", Rand, &[RR, RR]),
        std_spec("GMDE#7", Rand, &[d(Best, Block::BaseEcho), RR]),
        std_spec("GMDE#8", Best, &[RR, RR]),
        std_spec("GMDE#9", Best, &[d(Rand, Best), RR]),
        std_spec("GMDE#10", Best, &[d(Rand, Current), RR]),
        std_spec("GMDE#11", Best, &[d(Best, Rand), RR]),
        std_spec("GMDE#12", Best, &[d(Best, Current), RR]),
        std_spec("GMDE#13", Best, &[d(Current, Rand), RR]),
        std_spec("GMDE#14", Best, &[d(Current, Best), RR]),
        spec("GMDE#15", Current, &[d(Rand, Current), RR], ctr),
        std_spec("GMDE#16", Current, &[d(Best, Current), RR]),
    ]
}

/// Finds a registry entry by id, or parses `id` as strategy notation.
pub fn lookup(id: &str) -> Result<StrategySpec> {
    if let Some(s) = registry().into_iter().find(|s| s.id == id) {
        return Ok(s);
    }
    if id.contains('(') {
        return super::parse_spec(id);
    }
    Err(Error::UnknownStrategy(id.to_string()))
}

/// Every `base × plus × minus` assignment over `blocks` (base-major order).
/// With `n = 2` a `(rand − rand)` pair is appended to each. Ids are
/// `n<n>-<index>` with 1-based, zero-padded indices.
pub fn enumerate_family(n: usize, blocks: &[Block]) -> Result<Vec<StrategySpec>> {
    if !(1..=2).contains(&n) {
        return Err(Error::config(format!("family size n must be 1 or 2, got {n}")));
    }
    let mut unique: Vec<Block> = Vec::new();
    for b in blocks {
        if *b == Block::BaseEcho {
            return Err(Error::config("`base` cannot be enumerated"));
        }
        if !unique.contains(b) {
            unique.push(*b);
        }
    }
    if unique.is_empty() {
        return Err(Error::config("block set must not be empty"));
    }
    let mut out = Vec::with_capacity(unique.len().pow(3));
    for &base in &unique {
        for &plus in &unique {
            for &minus in &unique {
                let mut diffs = vec![DiffPair::new(plus, minus)];
                if n == 2 {
                    diffs.push(RR);
                }
                let id = format!("n{n}-{:02}", out.len() + 1);
                out.push(StrategySpec::new(id, base, diffs, CoefficientMode::Standard)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &StrategySpec) -> (Block, Vec<DiffPair>, CoefficientMode) {
        (s.base, s.diffs.clone(), s.mode)
    }

    #[test]
    fn ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|s| s.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
        assert_eq!(reg.len(), 23);
    }

    #[test]
    fn gmde1_and_gmde4() {
        let s = lookup("GMDE#1").unwrap();
        assert_eq!(s.base, Rand);
        assert_eq!(s.diffs, vec![RR]);
        let s = lookup("GMDE#4").unwrap();
        assert_eq!(s.base, Rand);
        assert_eq!(s.diffs, vec![DiffPair::new(Best, Rand)]);
    }

    #[test]
    fn aliases_share_structure() {
        let pairs = [
            ("GMDE#1", "DE/rand/1"),
            ("GMDE#2", "DE/best/1"),
            ("GMDE#6", "DE/rand/2"),
            ("GMDE#7", "DE/rand-to-best/1"),
            ("GMDE#8", "DE/best/2"),
            ("GMDE#15", "DE/current-to-rand/1"),
            ("GMDE#16", "DE/current-to-best/1"),
        ];
        for (a, b) in pairs {
            assert_eq!(shape(&lookup(a).unwrap()), shape(&lookup(b).unwrap()), "{a} vs {b}");
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(lookup("GMDE#99"), Err(Error::UnknownStrategy(_))));
    }

    #[test]
    fn family_counts_and_numbering() {
        let n1 = enumerate_family(1, &DEFAULT_SWEEP_BLOCKS).unwrap();
        assert_eq!(n1.len(), 27);
        // Base-major numbering puts DE/rand/1 first, rand + F(best - rand)
        // fourth and DE/best/1 tenth.
        assert_eq!(shape(&n1[0]), shape(&lookup("GMDE#1").unwrap()));
        assert_eq!(shape(&n1[3]), shape(&lookup("GMDE#4").unwrap()));
        assert_eq!(shape(&n1[9]), shape(&lookup("GMDE#2").unwrap()));
        assert_eq!(n1[3].id, "n1-04");

        let n2 = enumerate_family(2, &DEFAULT_SWEEP_BLOCKS).unwrap();
        assert_eq!(n2.len(), 27);
        assert!(n2.iter().all(|s| s.diffs.len() == 2 && s.diffs[1] == RR));
        assert_eq!(shape(&n2[0]), shape(&lookup("GMDE#6").unwrap()));
        assert_eq!(shape(&n2[9]), shape(&lookup("GMDE#8").unwrap()));
        assert_eq!(shape(&n2[23]), shape(&lookup("GMDE#16").unwrap()));

        let only_rand = enumerate_family(1, &[Rand]).unwrap();
        assert_eq!(only_rand.len(), 1);
        assert_eq!(shape(&only_rand[0]), shape(&lookup("GMDE#1").unwrap()));

        let dup = enumerate_family(1, &[Rand, Rand, Best]).unwrap();
        assert_eq!(dup.len(), 8);
        assert!(enumerate_family(3, &[Rand]).is_err());
        assert!(enumerate_family(1, &[]).is_err());
    }
}
