//! Text persistence of suite functions. Every real is written with 17
//! significant digits, so a read-back function evaluates bit-identically.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{BenchFunction, Core, Matrix};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::population::Bounds;

pub const SUITE_FORMAT: &str = "gmde-suite-v1";
const INDEX_FILE: &str = "index.txt";

fn push_vector(out: &mut String, key: &str, values: &[f64]) {
    out.push_str(key);
    for v in values {
        write!(out, " {v:.16e}").unwrap();
    }
    out.push('\n');
}

pub fn write_function(f: &BenchFunction) -> String {
    let mut out = String::new();
    writeln!(out, "format {SUITE_FORMAT}").unwrap();
    writeln!(out, "name {}", f.name()).unwrap();
    writeln!(out, "core {}", f.core().id()).unwrap();
    writeln!(out, "category {}", f.category().name()).unwrap();
    writeln!(out, "dimension {}", f.dimension()).unwrap();
    writeln!(out, "bias {:.16e}", f.bias()).unwrap();
    push_vector(&mut out, "lower", f.bounds().lower());
    push_vector(&mut out, "upper", f.bounds().upper());
    push_vector(&mut out, "shift", f.shift());
    match f.rotation() {
        None => out.push_str("rotation none\n"),
        Some(r) => {
            out.push_str("rotation row-major\n");
            for i in 0..r.dim() {
                push_vector(&mut out, "row", r.row(i));
            }
        }
    }
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn fail(line: usize, msg: impl std::fmt::Display) -> Error {
        Error::SuiteFormat(format!("line {line}: {msg}"))
    }

    /// Next line starting with `key`, returning (line number, remainder).
    fn expect(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (i, line) = self
            .iter
            .next()
            .ok_or_else(|| Error::SuiteFormat(format!("missing `{key}` line")))?;
        let lineno = i + 1;
        let mut parts = line.splitn(2, ' ');
        if parts.next() != Some(key) {
            return Err(Self::fail(lineno, format!("expected `{key}`")));
        }
        Ok((lineno, parts.next().unwrap_or("").trim()))
    }

    fn vector(&mut self, key: &str, d: usize) -> Result<Vec<f64>> {
        let (lineno, rest) = self.expect(key)?;
        let values = rest
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Self::fail(lineno, e))?;
        if values.len() != d {
            return Err(Self::fail(
                lineno,
                format!("expected {d} values, found {}", values.len()),
            ));
        }
        Ok(values)
    }
}

pub fn read_function(text: &str) -> Result<BenchFunction> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (n, format) = lines.expect("format")?;
    if format != SUITE_FORMAT {
        return Err(Lines::fail(n, format!("unsupported format `{format}`")));
    }
    let (_, name) = lines.expect("name")?;
    let (n, core_id) = lines.expect("core")?;
    let core = Core::from_id(core_id).ok_or_else(|| Lines::fail(n, format!("unknown core `{core_id}`")))?;
    lines.expect("category")?;
    let (n, dim) = lines.expect("dimension")?;
    let d: usize = dim.parse().map_err(|e| Lines::fail(n, e))?;
    let (n, bias) = lines.expect("bias")?;
    let bias: f64 = bias.parse().map_err(|e| Lines::fail(n, e))?;
    let lower = lines.vector("lower", d)?;
    let upper = lines.vector("upper", d)?;
    let shift = lines.vector("shift", d)?;
    let (n, kind) = lines.expect("rotation")?;
    let rotation = match kind {
        "none" => None,
        "row-major" => {
            let mut data = Vec::with_capacity(d * d);
            for _ in 0..d {
                data.extend(lines.vector("row", d)?);
            }
            Matrix::from_row_major(d, data)
        }
        other => return Err(Lines::fail(n, format!("unknown rotation kind `{other}`"))),
    };
    BenchFunction::new(name, core, Bounds::new(lower, upper)?, bias, shift, rotation)
}

/// Writes one file per function plus an index fixing the suite order.
pub fn write_suite(dir: &Path, suite: &[BenchFunction]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::SuiteFormat(format!("{}: {e}", dir.display())))?;
    let mut index = String::new();
    for f in suite {
        let file = format!("{}.txt", f.name());
        fs::write(dir.join(&file), write_function(f))
            .map_err(|e| Error::SuiteFormat(format!("{file}: {e}")))?;
        index.push_str(&file);
        index.push('\n');
    }
    fs::write(dir.join(INDEX_FILE), index).map_err(|e| Error::SuiteFormat(format!("{INDEX_FILE}: {e}")))
}

pub fn load_suite(dir: &Path) -> Result<Vec<BenchFunction>> {
    let read = |name: &str| {
        fs::read_to_string(dir.join(name)).map_err(|e| Error::SuiteFormat(format!("{name}: {e}")))
    };
    read(INDEX_FILE)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|file| {
            read_function(&read(file)?).map_err(|e| Error::SuiteFormat(format!("{file}: {e}")))
        })
        .collect()
}
