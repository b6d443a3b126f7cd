use std::f64::consts::{E, PI};
use std::sync::OnceLock;

/// Base landscapes of the suite. Every core has its global minimum value 0;
/// [`Core::optimum_coordinate`] gives the location of that minimum in every
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Core {
    Sphere,
    Schwefel12,
    Elliptic,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel226,
    Weierstrass,
    ExpandedScafferF6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Unimodal,
    Multimodal,
}

impl Category {
    pub fn name(&self) -> &'static str {
        match self {
            Category::Unimodal => "unimodal",
            Category::Multimodal => "multimodal",
        }
    }
}

impl Core {
    pub const ALL: [Core; 10] = [
        Core::Sphere,
        Core::Schwefel12,
        Core::Elliptic,
        Core::Rosenbrock,
        Core::Rastrigin,
        Core::Ackley,
        Core::Griewank,
        Core::Schwefel226,
        Core::Weierstrass,
        Core::ExpandedScafferF6,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Core::Sphere => "sphere",
            Core::Schwefel12 => "schwefel_1_2",
            Core::Elliptic => "elliptic",
            Core::Rosenbrock => "rosenbrock",
            Core::Rastrigin => "rastrigin",
            Core::Ackley => "ackley",
            Core::Griewank => "griewank",
            Core::Schwefel226 => "schwefel_2_26",
            Core::Weierstrass => "weierstrass",
            Core::ExpandedScafferF6 => "expanded_scaffer_f6",
        }
    }

    pub fn from_id(id: &str) -> Option<Core> {
        Core::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn category(&self) -> Category {
        match self {
            Core::Sphere | Core::Schwefel12 | Core::Elliptic => Category::Unimodal,
            _ => Category::Multimodal,
        }
    }

    /// Symmetric search interval `[-r, r]` per coordinate.
    pub fn default_range(&self) -> f64 {
        match self {
            Core::Sphere
            | Core::Schwefel12
            | Core::Elliptic
            | Core::Rosenbrock
            | Core::ExpandedScafferF6 => 100.0,
            Core::Rastrigin => 5.0,
            Core::Ackley => 32.0,
            Core::Griewank => 600.0,
            Core::Schwefel226 => 500.0,
            Core::Weierstrass => 0.5,
        }
    }

    /// Bias added to shifted variants.
    pub fn default_bias(&self) -> f64 {
        match self {
            Core::Sphere | Core::Schwefel12 | Core::Elliptic => -450.0,
            Core::Rosenbrock => 390.0,
            Core::Rastrigin => -330.0,
            Core::Ackley => -140.0,
            Core::Griewank => -180.0,
            Core::Schwefel226 => -310.0,
            Core::Weierstrass => 90.0,
            Core::ExpandedScafferF6 => -300.0,
        }
    }

    pub fn optimum_coordinate(&self) -> f64 {
        match self {
            Core::Rosenbrock => 1.0,
            _ => 0.0,
        }
    }

    /// Whether the suite also instantiates a shifted+rotated variant.
    pub fn rotated_variant(&self) -> bool {
        !matches!(self, Core::Schwefel226)
    }
}

pub fn evaluate_core(core: Core, z: &[f64]) -> f64 {
    match core {
        Core::Sphere => z.iter().map(|v| v * v).sum(),
        Core::Schwefel12 => {
            let mut prefix = 0.0;
            z.iter()
                .map(|v| {
                    prefix += v;
                    prefix * prefix
                })
                .sum()
        }
        Core::Elliptic => elliptic(z, &elliptic_weights(z.len())),
        Core::Rosenbrock => z
            .windows(2)
            .map(|w| {
                let a = w[0] * w[0] - w[1];
                let b = w[0] - 1.0;
                100.0 * a * a + b * b
            })
            .sum(),
        Core::Rastrigin => z
            .iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
            .sum(),
        Core::Ackley => {
            let d = z.len() as f64;
            let sq = z.iter().map(|v| v * v).sum::<f64>() / d;
            let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
            // Written so the value at the origin cancels exactly.
            20.0 * (1.0 - (-0.2 * sq.sqrt()).exp()) + (E - cs.exp())
        }
        Core::Griewank => {
            let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
            let prod: f64 = z
                .iter()
                .enumerate()
                .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                .product();
            sum - prod + 1.0
        }
        Core::Schwefel226 => schwefel_226(z),
        Core::Weierstrass => weierstrass(z),
        Core::ExpandedScafferF6 => {
            let d = z.len();
            (0..d).map(|i| scaffer_f6(z[i], z[(i + 1) % d])).sum()
        }
    }
}

pub(crate) fn elliptic_weights(d: usize) -> Vec<f64> {
    if d == 1 {
        return vec![1.0];
    }
    (0..d)
        .map(|i| 1e6_f64.powf(i as f64 / (d - 1) as f64))
        .collect()
}

pub(crate) fn elliptic(z: &[f64], weights: &[f64]) -> f64 {
    z.iter().zip(weights).map(|(v, w)| w * v * v).sum()
}

/// Peak location and value of `z · sin(sqrt(|z|))` on `[0, 500]`.
fn schwefel_peak() -> (f64, f64) {
    static PEAK: OnceLock<(f64, f64)> = OnceLock::new();
    *PEAK.get_or_init(|| {
        // Stationary point: sin(s) + (s / 2) cos(s) = 0 with s = sqrt(z).
        let mut s: f64 = 20.5;
        for _ in 0..50 {
            let g = s.sin() + 0.5 * s * s.cos();
            let dg = 1.5 * s.cos() - 0.5 * s * s.sin();
            s -= g / dg;
        }
        let z = s * s;
        (z, z * z.abs().sqrt().sin())
    })
}

fn schwefel_term(z: f64, d: f64) -> f64 {
    if z.abs() <= 500.0 {
        z * z.abs().sqrt().sin()
    } else if z > 500.0 {
        let m = 500.0 - z.rem_euclid(500.0);
        m * m.abs().sqrt().sin() - (z - 500.0).powi(2) / (10_000.0 * d)
    } else {
        let m = z.abs().rem_euclid(500.0) - 500.0;
        m * m.abs().sqrt().sin() + (z + 500.0).powi(2) / (10_000.0 * d)
    }
}

/// Schwefel 2.26 centred so the minimum sits at the origin, with the
/// quadratic penalty beyond `|z| > 500` that keeps shifted instances from
/// exposing deeper basins outside the nominal domain.
fn schwefel_226(z: &[f64]) -> f64 {
    let (peak_z, peak_value) = schwefel_peak();
    let d = z.len() as f64;
    z.iter()
        .map(|v| peak_value - schwefel_term(v + peak_z, d))
        .sum()
}

const WEIERSTRASS_K: usize = 21;

struct WeierstrassTable {
    amp: [f64; WEIERSTRASS_K],
    freq: [f64; WEIERSTRASS_K],
    offset: [f64; WEIERSTRASS_K],
}

fn weierstrass_table() -> &'static WeierstrassTable {
    static TABLE: OnceLock<WeierstrassTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let (a, b) = (0.5_f64, 3.0_f64);
        let mut t = WeierstrassTable {
            amp: [0.0; WEIERSTRASS_K],
            freq: [0.0; WEIERSTRASS_K],
            offset: [0.0; WEIERSTRASS_K],
        };
        for k in 0..WEIERSTRASS_K {
            t.amp[k] = a.powi(k as i32);
            t.freq[k] = 2.0 * PI * b.powi(k as i32);
            // Equal to the argument at z = 0, bit for bit.
            t.offset[k] = (t.freq[k] * 0.5).cos();
        }
        t
    })
}

/// a = 0.5, b = 3, k_max = 20.
fn weierstrass(z: &[f64]) -> f64 {
    let t = weierstrass_table();
    z.iter()
        .map(|v| {
            let u = v + 0.5;
            (0..WEIERSTRASS_K)
                .map(|k| t.amp[k] * ((t.freq[k] * u).cos() - t.offset[k]))
                .sum::<f64>()
        })
        .sum()
}

fn scaffer_f6(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    let s = r2.sqrt().sin();
    let den = 1.0 + 0.001 * r2;
    0.5 + (s * s - 0.5) / (den * den)
}
