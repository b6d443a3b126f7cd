//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails. Criterion numbers given as arguments restrict the run
//! to those criteria.

mod benchmarks;
mod control;
mod donors;
mod pipeline;
mod wilcoxon;

use std::time::Instant;

type Check = fn() -> Result<String, String>;

fn main() {
    let checks: [(u32, &str, Check); 8] = [
        (1, "oracle equivalence of classic donors", donors::criterion),
        (2, "jDE parameter ranges and change frequency", control::jde_criterion),
        (3, "pool gate frequencies", control::gate_criterion),
        (4, "Wilcoxon exact p-values", wilcoxon::criterion),
        (5, "benchmark certificates", benchmarks::criterion),
        (6, "ensemble beats DE/rand/1 and DE/best/1", pipeline::relative_performance),
        (7, "pipeline determinism", pipeline::determinism),
        (8, "preprocess sweep shape", pipeline::sweep_shape),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<_> = checks
        .into_iter()
        .filter(|(id, ..)| only.is_empty() || only.contains(id))
        .collect();
    let total = selected.len();
    let mut failures = 0;
    for (id, title, check) in selected {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({title}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {id} ({title}): {detail} [{secs:.1}s]");
            }
        }
    }
    if failures > 0 {
        println!("{failures} of {total} criteria failed");
        std::process::exit(1);
    }
    println!("all {total} criteria passed");
}
