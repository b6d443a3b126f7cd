use gmde::control::{propose_cr, propose_f, ControlMode, JdeConfig};
use gmde::engine::{BoundaryPolicy, Evolution, PoolChoice, PoolConfig, SlotPools, StepOutcome};
use gmde::{Bounds, EvalBudget, FnObjective, RngStream};

const STEPS: usize = 100_000;

type Sphere = FnObjective<fn(&[f64]) -> f64>;

fn sphere(dim: usize) -> Sphere {
    let f: fn(&[f64]) -> f64 = |x| x.iter().map(|v| v * v).sum();
    FnObjective::new("sphere", Bounds::uniform(dim, -100.0, 100.0).unwrap(), f)
}

fn ensemble(
    objective: &Sphere,
    ssr: f64,
    np: usize,
    max_fes: u64,
    seed: u64,
) -> Result<(Evolution<'_, Sphere>, SlotPools), String> {
    let (specs, pools) = PoolConfig { ssr, ..PoolConfig::default() }
        .resolve()
        .map_err(|e| e.to_string())?;
    let evo = Evolution::new(
        objective,
        specs,
        np,
        ControlMode::default(),
        BoundaryPolicy::default(),
        EvalBudget::new(max_fes).map_err(|e| e.to_string())?,
        RngStream::new(seed),
    )
    .map_err(|e| e.to_string())?;
    Ok((evo, pools))
}

pub fn jde_criterion() -> Result<String, String> {
    let cfg = JdeConfig::default();
    let mut rng = RngStream::new(2);
    let (mut f, mut cr) = (0.5, 0.9);
    let (mut f_changes, mut cr_changes) = (0usize, 0usize);
    for step in 0..STEPS {
        let nf = propose_f(f, &cfg, &mut rng);
        let ncr = propose_cr(cr, &cfg, &mut rng);
        if !(0.1..=1.0).contains(&nf) || !(0.0..=1.0).contains(&ncr) {
            return Err(format!("step {step}: F = {nf}, Cr = {ncr}"));
        }
        f_changes += usize::from(nf != f);
        cr_changes += usize::from(ncr != cr);
        (f, cr) = (nf, ncr);
    }
    let f_rate = f_changes as f64 / STEPS as f64;
    let cr_rate = cr_changes as f64 / STEPS as f64;
    for (name, rate) in [("F", f_rate), ("Cr", cr_rate)] {
        if (rate - 0.1).abs() > 0.01 {
            return Err(format!("{name} change frequency {rate:.4} outside 0.1 +/- 0.01"));
        }
    }

    // The same bounds must hold for every member inside a live ensemble run.
    let objective = sphere(10);
    let (mut evo, pools) = ensemble(&objective, 0.5, 20, u64::MAX / 2, 3)?;
    let mut trials = 0usize;
    while trials < STEPS {
        evo.step_ensemble(&pools).map_err(|e| e.to_string())?;
        trials += evo.population().len();
        for m in evo.population().members() {
            if let Some(v) = m.scaling.values().iter().find(|v| !(0.1..=1.0).contains(*v)) {
                return Err(format!("member F = {v} in a live run"));
            }
            if !(0.0..=1.0).contains(&m.cr) {
                return Err(format!("member Cr = {} in a live run", m.cr));
            }
        }
    }
    Ok(format!(
        "{STEPS} steps, F change rate {f_rate:.4}, Cr change rate {cr_rate:.4}; \
         all member F/Cr in range over {trials} live trials"
    ))
}

/// Runs `generations` ensemble generations and counts how often each pool ran.
fn gate_counts(ssr: f64, generations: u64, seed: u64) -> Result<[u64; 2], String> {
    let objective = sphere(2);
    let (mut evo, pools) = ensemble(&objective, ssr, 8, u64::MAX / 2, seed)?;
    let mut counts = [0u64; 2];
    for _ in 0..generations {
        let (outcome, choice) = evo.step_ensemble(&pools).map_err(|e| e.to_string())?;
        match choice {
            Some(PoolChoice::First) => counts[0] += 1,
            Some(PoolChoice::Second) => counts[1] += 1,
            None => return Err("generation ran without a pool".into()),
        }
        if outcome == StepOutcome::Exhausted {
            return Err("budget exhausted".into());
        }
    }
    if evo.pool_counts() != counts {
        return Err(format!("engine counted {:?}, observed {counts:?}", evo.pool_counts()));
    }
    Ok(counts)
}

pub fn gate_criterion() -> Result<String, String> {
    let generations = 10_000;
    let half = gate_counts(0.5, generations, 5)?;
    let freq = half[0] as f64 / generations as f64;
    if !(0.485..=0.515).contains(&freq) {
        return Err(format!("SSR 0.5: first-pool frequency {freq:.4} outside [0.485, 0.515]"));
    }
    let never_first = gate_counts(0.0, generations, 6)?;
    let always_first = gate_counts(1.0, generations, 7)?;
    if never_first[0] != 0 || always_first[1] != 0 {
        return Err(format!("SSR 0 gave {never_first:?}, SSR 1 gave {always_first:?}"));
    }
    Ok(format!(
        "SSR 0.5 first-pool frequency {freq:.4} over {generations} generations; \
         SSR 0 ran pool 1 {} times, SSR 1 ran pool 2 {} times",
        never_first[0], always_first[1]
    ))
}
