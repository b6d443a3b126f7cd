//! Persistence of run records and the manifest that indexes them.
//!
//! A record file is tab-separated text: a version line, one `key<TAB>value`
//! line per scalar field, then the convergence trace as a small table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gmde::engine::{RunRecord, TraceSample};

use crate::error::{io_err, CliError, CliResult};

pub const RECORD_VERSION: &str = "gmde-run-record\tv1";
pub const MANIFEST_FILE: &str = "manifest.tsv";
pub const MANIFEST_HEADER: &str = "algorithm\tfunction\trun\tseed\tstatus\tfile";

/// File-system safe form of an algorithm id.
pub fn slug(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

pub fn record_path(algorithm: &str, function: &str, run: usize) -> PathBuf {
    Path::new("records")
        .join(slug(algorithm))
        .join(slug(function))
        .join(format!("run-{run:03}.tsv"))
}

/// A run record as persisted, with the error relative to the function's
/// optimum value.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredRecord {
    pub algorithm: String,
    pub function: String,
    pub run: usize,
    pub seed: u64,
    pub dimension: usize,
    pub np: usize,
    pub max_fes: u64,
    pub used_fes: u64,
    pub generations: u64,
    pub control: String,
    pub boundary: String,
    pub pool_counts: Option<[u64; 2]>,
    pub best_fitness: f64,
    pub bias: f64,
    pub error: f64,
    pub best_x: Vec<f64>,
    pub trace: Vec<TraceSample>,
}

impl StoredRecord {
    pub fn from_run(rec: &RunRecord, run: usize, bias: f64) -> Self {
        Self {
            algorithm: rec.algorithm.clone(),
            function: rec.objective.clone(),
            run,
            seed: rec.seed,
            dimension: rec.dimension,
            np: rec.np,
            max_fes: rec.max_fes,
            used_fes: rec.used_fes,
            generations: rec.generations,
            control: rec.control.clone(),
            boundary: rec.boundary.name().to_string(),
            pool_counts: rec.pool_counts,
            best_fitness: rec.best_fitness,
            bias,
            error: rec.best_fitness - bias,
            best_x: rec.best_x.clone(),
            trace: rec.trace.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| writeln!(out, "{k}\t{v}").unwrap();
        kv("algorithm", self.algorithm.clone());
        kv("function", self.function.clone());
        kv("run", self.run.to_string());
        kv("seed", self.seed.to_string());
        kv("dimension", self.dimension.to_string());
        kv("np", self.np.to_string());
        kv("max_fes", self.max_fes.to_string());
        kv("used_fes", self.used_fes.to_string());
        kv("generations", self.generations.to_string());
        kv("control", self.control.clone());
        kv("boundary", self.boundary.clone());
        kv(
            "pool_counts",
            match self.pool_counts {
                Some([a, b]) => format!("{a},{b}"),
                None => "-".into(),
            },
        );
        kv("best_fitness", format!("{:.16e}", self.best_fitness));
        kv("bias", format!("{:.16e}", self.bias));
        kv("error", format!("{:.16e}", self.error));
        let xs: Vec<String> = self.best_x.iter().map(|v| format!("{v:.16e}")).collect();
        kv("best_x", xs.join(" "));
        kv("trace", self.trace.len().to_string());
        let mut text = format!("{RECORD_VERSION}\n{out}generation\tused_fes\tbest_fitness\n");
        for s in &self.trace {
            writeln!(text, "{}\t{}\t{:.16e}", s.generation, s.used_fes, s.best_fitness).unwrap();
        }
        text
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l == RECORD_VERSION => {}
            _ => return Err("missing or unsupported version line".into()),
        }
        let mut field = |key: &str| -> Result<(usize, String), String> {
            let (i, line) = lines.next().ok_or_else(|| format!("missing `{key}`"))?;
            let (k, v) = line.split_once('\t').ok_or_else(|| format!("line {}: malformed", i + 1))?;
            if k != key {
                return Err(format!("line {}: expected `{key}`, found `{k}`", i + 1));
            }
            Ok((i + 1, v.to_string()))
        };
        fn num<T: std::str::FromStr>(line: usize, v: &str) -> Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            v.parse().map_err(|e| format!("line {line}: {e}"))
        }
        let algorithm = field("algorithm")?.1;
        let function = field("function")?.1;
        let (l, v) = field("run")?;
        let run = num(l, &v)?;
        let (l, v) = field("seed")?;
        let seed = num(l, &v)?;
        let (l, v) = field("dimension")?;
        let dimension = num(l, &v)?;
        let (l, v) = field("np")?;
        let np = num(l, &v)?;
        let (l, v) = field("max_fes")?;
        let max_fes = num(l, &v)?;
        let (l, v) = field("used_fes")?;
        let used_fes = num(l, &v)?;
        let (l, v) = field("generations")?;
        let generations = num(l, &v)?;
        let control = field("control")?.1;
        let boundary = field("boundary")?.1;
        let (l, v) = field("pool_counts")?;
        let pool_counts = match v.split_once(',') {
            Some((a, b)) => Some([num(l, a)?, num(l, b)?]),
            None if v == "-" => None,
            None => return Err(format!("line {l}: malformed pool counts")),
        };
        let (l, v) = field("best_fitness")?;
        let best_fitness = num(l, &v)?;
        let (l, v) = field("bias")?;
        let bias = num(l, &v)?;
        let (l, v) = field("error")?;
        let error = num(l, &v)?;
        let (l, v) = field("best_x")?;
        let best_x = v
            .split_whitespace()
            .map(|t| num(l, t))
            .collect::<Result<Vec<f64>, _>>()?;
        let (l, v) = field("trace")?;
        let samples: usize = num(l, &v)?;
        lines.next().ok_or("missing trace header")?;
        let mut trace = Vec::with_capacity(samples);
        for _ in 0..samples {
            let (i, line) = lines.next().ok_or("truncated trace")?;
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(format!("line {}: expected 3 trace columns", i + 1));
            }
            trace.push(TraceSample {
                generation: num(i + 1, cols[0])?,
                used_fes: num(i + 1, cols[1])?,
                best_fitness: num(i + 1, cols[2])?,
            });
        }
        Ok(Self {
            algorithm,
            function,
            run,
            seed,
            dimension,
            np,
            max_fes,
            used_fes,
            generations,
            control,
            boundary,
            pool_counts,
            best_fitness,
            bias,
            error,
            best_x,
            trace,
        })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text).map_err(|e| CliError::Partial(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub algorithm: String,
    pub function: String,
    pub run: usize,
    pub seed: u64,
    /// `ok` or `failed: <reason>`.
    pub status: String,
    pub file: String,
}

impl ManifestEntry {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

pub fn write_manifest(dir: &Path, entries: &[ManifestEntry]) -> CliResult<()> {
    let mut out = String::from(MANIFEST_HEADER);
    out.push('\n');
    for e in entries {
        let status = e.status.replace(['\t', '\n'], " ");
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", e.algorithm, e.function, e.run, e.seed, status, e.file)
            .unwrap();
    }
    let path = dir.join(MANIFEST_FILE);
    std::fs::write(&path, out).map_err(io_err(path))
}

pub fn read_manifest(dir: &Path) -> CliResult<Vec<ManifestEntry>> {
    let path = dir.join(MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
    let bad = |line: usize| CliError::Partial(format!("{}: line {line}: malformed entry", path.display()));
    let mut lines = text.lines().enumerate();
    if lines.next().map(|(_, l)| l) != Some(MANIFEST_HEADER) {
        return Err(bad(1));
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 6 {
                return Err(bad(i + 1));
            }
            Ok(ManifestEntry {
                algorithm: cols[0].into(),
                function: cols[1].into(),
                run: cols[2].parse().map_err(|_| bad(i + 1))?,
                seed: cols[3].parse().map_err(|_| bad(i + 1))?,
                status: cols[4].into(),
                file: cols[5].into(),
            })
        })
        .collect()
}
