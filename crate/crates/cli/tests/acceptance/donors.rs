use std::sync::Arc;
use std::time::Instant;

use gmde::mutation::{donor, lookup, sample_roles, Block};
use gmde::{Individual, Population, RngStream};

const CLASSIC: [&str; 7] = [
    "DE/rand/1",
    "DE/best/1",
    "DE/rand/2",
    "DE/best/2",
    "DE/current-to-best/1",
    "DE/rand-to-best/1",
    "DE/current-to-rand/1",
];

fn population(rng: &mut RngStream) -> Population {
    let ids: Arc<[String]> = Arc::from(vec!["s".to_string()]);
    let members = (0..50)
        .map(|_| {
            let x = (0..30).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
            let mut m = Individual::new(x, Arc::clone(&ids));
            m.fitness = Some(rng.uniform_in(-1e3, 1e3));
            m
        })
        .collect();
    Population::from_members(members).unwrap()
}

/// Index of the fittest member, lowest index on ties.
fn fittest(pop: &Population) -> usize {
    let mut best = 0;
    for j in 1..pop.len() {
        if pop.member(j).fitness.unwrap() < pop.member(best).fitness.unwrap() {
            best = j;
        }
    }
    best
}

/// The classic equations written out coordinate by coordinate. `r` holds
/// the random members in order of appearance.
fn hand_donor(id: &str, pop: &Population, i: usize, r: &[usize], f: f64, k: f64) -> Vec<f64> {
    let b = fittest(pop);
    let x = |j: usize, c: usize| pop.x(j)[c];
    (0..30)
        .map(|c| match id {
            "DE/rand/1" => x(r[0], c) + f * (x(r[1], c) - x(r[2], c)),
            "DE/best/1" => x(b, c) + f * (x(r[0], c) - x(r[1], c)),
            "DE/rand/2" => x(r[0], c) + f * (x(r[1], c) - x(r[2], c)) + f * (x(r[3], c) - x(r[4], c)),
            "DE/best/2" => x(b, c) + f * (x(r[0], c) - x(r[1], c)) + f * (x(r[2], c) - x(r[3], c)),
            "DE/current-to-best/1" => x(i, c) + f * (x(b, c) - x(i, c)) + f * (x(r[0], c) - x(r[1], c)),
            "DE/rand-to-best/1" => x(r[0], c) + f * (x(b, c) - x(r[0], c)) + f * (x(r[1], c) - x(r[2], c)),
            "DE/current-to-rand/1" => {
                x(i, c) + k * (x(r[0], c) - x(i, c)) + (k * f) * (x(r[1], c) - x(r[2], c))
            }
            _ => unreachable!(),
        })
        .collect()
}

pub fn criterion() -> Result<String, String> {
    let started = Instant::now();
    let specs: Vec<_> = CLASSIC.iter().map(|id| lookup(id).unwrap()).collect();
    let mut rng = RngStream::new(0x5eed);
    let mut compared = 0usize;
    for p in 0..1000 {
        let pop = population(&mut rng);
        let i = p % 50;
        for spec in &specs {
            let roles = sample_roles(spec, &pop, i, &mut rng).map_err(|e| e.to_string())?;
            let blocks: Vec<Block> = spec.blocks().collect();
            let idx: Vec<usize> = roles.indices().collect();
            let rands: Vec<usize> = blocks
                .iter()
                .zip(&idx)
                .filter(|(b, _)| **b == Block::Rand)
                .map(|(_, j)| *j)
                .collect();
            for (a, &ra) in rands.iter().enumerate() {
                if ra == i || rands[a + 1..].contains(&ra) {
                    return Err(format!("{}: random members not distinct from each other and the target", spec.id));
                }
            }
            let f = rng.uniform_in(0.1, 1.0);
            let k = rng.clone().uniform();
            let v = donor(spec, &roles, &pop, &vec![f; spec.n_diffs()], &mut rng);
            let h = hand_donor(&spec.id, &pop, i, &rands, f, k);
            if let Some(c) = (0..30).find(|&c| v[c].to_bits() != h[c].to_bits()) {
                return Err(format!("{} differs at population {p}, coordinate {c}: {} vs {}", spec.id, v[c], h[c]));
            }
            compared += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("took {secs:.2}s, limit 10s"));
    }
    Ok(format!("{compared} donors bitwise equal over 1000 populations (NP=50, D=30) in {secs:.2}s"))
}
