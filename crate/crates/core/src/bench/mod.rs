//! Benchmark suite: classic unimodal and multimodal cores, wrapped in
//! self-generated shift and rotation transforms.
//!
//! A suite function evaluates `core(R · (x − o)) + bias`. Plain variants use
//! `o = 0`, `R = I` and zero bias. Transform data is drawn from a seed and can
//! be written to and read back from text files.

mod cores;
mod io;
mod rotation;

pub use cores::{evaluate_core, Category, Core};
pub use io::{load_suite, read_function, write_function, write_suite, SUITE_FORMAT};
pub use rotation::{random_rotation, Matrix};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::population::Bounds;
use crate::rng::RngStream;

/// Which transforms a suite function applies to its core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Shifted,
    ShiftedRotated,
}

impl Variant {
    pub fn prefix(&self) -> &'static str {
        match self {
            Variant::Plain => "",
            Variant::Shifted => "shifted_",
            Variant::ShiftedRotated => "shifted_rotated_",
        }
    }
}

/// One benchmark instance with its transform data.
#[derive(Debug, Clone)]
pub struct BenchFunction {
    name: String,
    core: Core,
    bounds: Bounds,
    bias: f64,
    shift: Vec<f64>,
    rotation: Option<Matrix>,
    weights: Vec<f64>,
}

const STACK_DIM: usize = 64;

impl BenchFunction {
    pub fn new(
        name: impl Into<String>,
        core: Core,
        bounds: Bounds,
        bias: f64,
        shift: Vec<f64>,
        rotation: Option<Matrix>,
    ) -> Result<Self> {
        let d = bounds.dim();
        if shift.len() != d {
            return Err(Error::SuiteFormat(format!(
                "shift has {} entries, dimension is {d}",
                shift.len()
            )));
        }
        if let Some(r) = &rotation {
            if r.dim() != d {
                return Err(Error::SuiteFormat(format!(
                    "rotation is {0}x{0}, dimension is {d}",
                    r.dim()
                )));
            }
        }
        if !bias.is_finite() || shift.iter().any(|v| !v.is_finite()) {
            return Err(Error::SuiteFormat("non-finite transform data".into()));
        }
        let weights = match core {
            Core::Elliptic => cores::elliptic_weights(d),
            _ => Vec::new(),
        };
        Ok(Self {
            name: name.into(),
            core,
            bounds,
            bias,
            shift,
            rotation,
            weights,
        })
    }

    pub fn core(&self) -> Core {
        self.core
    }

    pub fn category(&self) -> Category {
        self.core.category()
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn rotation(&self) -> Option<&Matrix> {
        self.rotation.as_ref()
    }

    /// Location of the global minimum: `o + Rᵀ z*`.
    pub fn optimum(&self) -> Vec<f64> {
        let z_star = vec![self.core.optimum_coordinate(); self.shift.len()];
        let mapped = match &self.rotation {
            Some(r) => r.apply_transpose(&z_star),
            None => z_star,
        };
        self.shift.iter().zip(&mapped).map(|(o, z)| o + z).collect()
    }

    fn core_value(&self, z: &[f64]) -> f64 {
        match self.core {
            Core::Elliptic => cores::elliptic(z, &self.weights),
            core => evaluate_core(core, z),
        }
    }

    fn transform_and_eval(&self, x: &[f64], shifted: &mut [f64], rotated: &mut [f64]) -> f64 {
        for ((s, xi), oi) in shifted.iter_mut().zip(x).zip(&self.shift) {
            *s = xi - oi;
        }
        match &self.rotation {
            Some(r) => {
                r.apply_into(shifted, rotated);
                self.core_value(rotated)
            }
            None => self.core_value(shifted),
        }
    }
}

impl Objective for BenchFunction {
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let d = self.shift.len();
        assert_eq!(x.len(), d, "{}: expected {d} coordinates", self.name);
        let value = if d <= STACK_DIM {
            let mut a = [0.0; STACK_DIM];
            let mut b = [0.0; STACK_DIM];
            self.transform_and_eval(x, &mut a[..d], &mut b[..d])
        } else {
            let mut a = vec![0.0; d];
            let mut b = vec![0.0; d];
            self.transform_and_eval(x, &mut a, &mut b)
        };
        value + self.bias
    }
}

/// Builds the suite for dimension `d`: every core plain and shifted, plus a
/// shifted+rotated variant where [`Core::rotated_variant`] says so. The
/// shifted and shifted+rotated variants of one core share shift and bias.
pub fn make_suite(d: usize, seed: u64) -> Result<Vec<BenchFunction>> {
    if d < 2 {
        return Err(Error::Config(format!("suite dimension must be at least 2, got {d}")));
    }
    let mut rng = RngStream::new(seed);
    let mut suite = Vec::new();
    for core in Core::ALL {
        let r = core.default_range();
        let bounds = Bounds::uniform(d, -r, r)?;
        let inner = 0.8 * r;
        let shift: Vec<f64> = (0..d).map(|_| rng.uniform_in(-inner, inner)).collect();
        let rotation = core
            .rotated_variant()
            .then(|| random_rotation(d, &mut rng));

        suite.push(BenchFunction::new(
            core.id(),
            core,
            bounds.clone(),
            0.0,
            vec![0.0; d],
            None,
        )?);
        suite.push(BenchFunction::new(
            format!("{}{}", Variant::Shifted.prefix(), core.id()),
            core,
            bounds.clone(),
            core.default_bias(),
            shift.clone(),
            None,
        )?);
        if let Some(rot) = rotation {
            suite.push(BenchFunction::new(
                format!("{}{}", Variant::ShiftedRotated.prefix(), core.id()),
                core,
                bounds,
                core.default_bias(),
                shift,
                Some(rot),
            )?);
        }
    }
    Ok(suite)
}
