use crate::population::{fitness_key, Bounds, Individual};
use crate::rng::RngStream;

/// What to do with coordinates that leave the search box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    /// Mirror the overshoot back inside, repeatedly if needed.
    #[default]
    Reflect,
    /// Pin to the violated bound.
    Clamp,
    /// Redraw the coordinate uniformly inside the box.
    Resample,
}

impl BoundaryPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryPolicy::Reflect => "reflect",
            BoundaryPolicy::Clamp => "clamp",
            BoundaryPolicy::Resample => "resample",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "reflect" => Some(BoundaryPolicy::Reflect),
            "clamp" => Some(BoundaryPolicy::Clamp),
            "resample" => Some(BoundaryPolicy::Resample),
            _ => None,
        }
    }
}

/// Coordinate `j` comes from the donor when `rand_j < cr` or `j == j_rand`.
pub fn binomial_crossover(target: &[f64], donor: &[f64], cr: f64, rng: &mut RngStream) -> Vec<f64> {
    let mut trial = Vec::with_capacity(target.len());
    binomial_crossover_into(target, donor, cr, rng, &mut trial);
    trial
}

pub fn binomial_crossover_into(
    target: &[f64],
    donor: &[f64],
    cr: f64,
    rng: &mut RngStream,
    trial: &mut Vec<f64>,
) {
    assert_eq!(target.len(), donor.len(), "target and donor lengths differ");
    let j_rand = rng.below(target.len());
    trial.clear();
    trial.extend(target.iter().zip(donor).enumerate().map(|(j, (&t, &d))| {
        if rng.uniform() < cr || j == j_rand {
            d
        } else {
            t
        }
    }));
}

// Beyond this many mirror steps the coordinate is folded directly.
const MAX_REFLECTIONS: usize = 8;

fn reflect(mut v: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..MAX_REFLECTIONS {
        if v < lo {
            v = 2.0 * lo - v;
        } else if v > hi {
            v = 2.0 * hi - v;
        } else {
            return v;
        }
    }
    let width = hi - lo;
    let mut y = (v - lo).rem_euclid(2.0 * width);
    if y > width {
        y = 2.0 * width - y;
    }
    (lo + y).clamp(lo, hi)
}

/// Brings every coordinate of `x` inside `bounds`. Non-finite coordinates
/// are redrawn uniformly under every policy.
pub fn repair_bounds_in_place(
    x: &mut [f64],
    bounds: &Bounds,
    policy: BoundaryPolicy,
    rng: &mut RngStream,
) {
    for ((v, &lo), &hi) in x.iter_mut().zip(bounds.lower()).zip(bounds.upper()) {
        if *v >= lo && *v <= hi {
            continue;
        }
        *v = if !v.is_finite() {
            rng.uniform_in(lo, hi)
        } else {
            match policy {
                BoundaryPolicy::Reflect => reflect(*v, lo, hi),
                BoundaryPolicy::Clamp => v.clamp(lo, hi),
                BoundaryPolicy::Resample => rng.uniform_in(lo, hi),
            }
        };
    }
}

pub fn repair_bounds(
    x: &[f64],
    bounds: &Bounds,
    policy: BoundaryPolicy,
    rng: &mut RngStream,
) -> Vec<f64> {
    let mut out = x.to_vec();
    repair_bounds_in_place(&mut out, bounds, policy, rng);
    out
}

/// The trial replaces the incumbent only when strictly better. NaN and
/// unevaluated fitness rank as worst.
pub fn trial_wins(current: Option<f64>, trial: Option<f64>) -> bool {
    fitness_key(trial) < fitness_key(current)
}

pub fn greedy_select(current: Individual, trial: Individual) -> (Individual, bool) {
    if trial_wins(current.fitness, trial.fitness) {
        (trial, true)
    } else {
        (current, false)
    }
}
