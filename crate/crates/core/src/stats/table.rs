use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::wilcoxon::{wilcoxon_signed_rank, Verdict, WilcoxonReport};
use crate::error::{Error, Result};

/// `(algorithm, function)`.
pub type CellKey = (String, String);
/// Final values of every run of a cell, ordered by run index.
pub type CellMap = BTreeMap<CellKey, Vec<f64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    /// One test per function, pairing runs by run index.
    PerFunction,
    /// One test per opponent, pairing the per-function mean values.
    AcrossFunctions,
}

impl TableMode {
    pub fn name(&self) -> &'static str {
        match self {
            TableMode::PerFunction => "per-function",
            TableMode::AcrossFunctions => "across-functions",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "per-function" => Some(TableMode::PerFunction),
            "across-functions" => Some(TableMode::AcrossFunctions),
            _ => None,
        }
    }
}

/// Label used in the function column of across-functions rows.
const ALL_FUNCTIONS: &str = "*";

#[derive(Debug, Clone, PartialEq)]
pub struct WltRow {
    pub function: String,
    pub candidate: String,
    pub opponent: String,
    pub report: WilcoxonReport,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WltTotals {
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
}

impl WltTotals {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Win => self.wins += 1,
            Verdict::Loss => self.losses += 1,
            Verdict::Tie => self.ties += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.wins + self.losses + self.ties
    }

    pub fn margin(&self) -> i64 {
        self.wins as i64 - self.losses as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WltTable {
    pub mode: TableMode,
    pub alpha: f64,
    pub candidate: String,
    pub opponents: Vec<String>,
    pub functions: Vec<String>,
    pub rows: Vec<WltRow>,
    pub totals: Vec<WltTotals>,
}

/// Every `(algorithm, function)` combination that has no values.
pub fn missing_cells(
    algorithms: &[&str],
    functions: &[&str],
    cells: &CellMap,
) -> Vec<CellKey> {
    let mut missing = Vec::new();
    for alg in algorithms {
        for f in functions {
            let key = (alg.to_string(), f.to_string());
            if cells.get(&key).is_none_or(|v| v.is_empty()) {
                missing.push(key);
            }
        }
    }
    missing
}

/// Win/loss/tie table of `candidate` against each opponent.
pub fn wlt_table(
    candidate: &str,
    opponents: &[&str],
    functions: &[&str],
    cells: &CellMap,
    mode: TableMode,
    alpha: f64,
) -> Result<WltTable> {
    let mut algorithms = vec![candidate];
    algorithms.extend_from_slice(opponents);
    let missing = missing_cells(&algorithms, functions, cells);
    if !missing.is_empty() {
        let list: Vec<String> = missing.iter().map(|(a, f)| format!("{a}/{f}")).collect();
        return Err(Error::Stats(format!("missing cells: {}", list.join(", "))));
    }
    let get = |alg: &str, f: &str| &cells[&(alg.to_string(), f.to_string())];
    let runs = get(candidate, functions[0]).len();
    for alg in &algorithms {
        for f in functions {
            let n = get(alg, f).len();
            if n != runs {
                return Err(Error::Stats(format!(
                    "unequal run counts: {alg}/{f} has {n}, expected {runs}"
                )));
            }
        }
    }

    let mut rows = Vec::new();
    let mut totals = vec![WltTotals::default(); opponents.len()];
    match mode {
        TableMode::PerFunction => {
            for f in functions {
                for (k, opp) in opponents.iter().enumerate() {
                    let report = wilcoxon_signed_rank(get(candidate, f), get(opp, f), alpha)?;
                    totals[k].add(report.verdict);
                    rows.push(WltRow {
                        function: f.to_string(),
                        candidate: candidate.to_string(),
                        opponent: opp.to_string(),
                        report,
                    });
                }
            }
        }
        TableMode::AcrossFunctions => {
            let means = |alg: &str| -> Vec<f64> {
                functions
                    .iter()
                    .map(|f| {
                        let v = get(alg, f);
                        v.iter().sum::<f64>() / v.len() as f64
                    })
                    .collect()
            };
            let cand = means(candidate);
            for (k, opp) in opponents.iter().enumerate() {
                let report = wilcoxon_signed_rank(&cand, &means(opp), alpha)?;
                totals[k].add(report.verdict);
                rows.push(WltRow {
                    function: ALL_FUNCTIONS.to_string(),
                    candidate: candidate.to_string(),
                    opponent: opp.to_string(),
                    report,
                });
            }
        }
    }
    Ok(WltTable {
        mode,
        alpha,
        candidate: candidate.to_string(),
        opponents: opponents.iter().map(|s| s.to_string()).collect(),
        functions: functions.iter().map(|s| s.to_string()).collect(),
        rows,
        totals,
    })
}

pub const ROW_HEADER: &str =
    "function\tcandidate\topponent\tn_eff\tsr_plus\tsr_minus\tmr_plus\tmr_minus\tp_value\tverdict";

impl WltTable {
    /// Machine-readable rows, tab separated, with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(ROW_HEADER);
        out.push('\n');
        for row in &self.rows {
            let r = &row.report;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{:.1}\t{:.1}\t{:.4}\t{:.4}\t{:.6e}\t{}",
                row.function,
                row.candidate,
                row.opponent,
                r.n_effective,
                r.sr_plus,
                r.sr_minus,
                r.mr_plus,
                r.mr_minus,
                r.p_value,
                r.verdict.name()
            )
            .unwrap();
        }
        out
    }

    /// Fixed-width table: one line per function with a verdict symbol per
    /// opponent (`+` candidate better, `-` worse, `=` no significant
    /// difference), then w/l/t totals.
    pub fn to_text(&self) -> String {
        let fw = self
            .rows
            .iter()
            .map(|r| r.function.len())
            .chain(std::iter::once(8))
            .max()
            .unwrap_or(8);
        let cw = self.opponents.iter().map(|o| o.len().max(7)).collect::<Vec<_>>();
        let mut out = String::new();
        writeln!(
            out,
            "candidate {} | mode {} | alpha {}",
            self.candidate,
            self.mode.name(),
            self.alpha
        )
        .unwrap();
        write!(out, "{:fw$}", "function").unwrap();
        for (o, w) in self.opponents.iter().zip(&cw) {
            write!(out, "  {o:>w$}").unwrap();
        }
        out.push('\n');
        let per_line = self.opponents.len();
        for chunk in self.rows.chunks(per_line.max(1)) {
            write!(out, "{:fw$}", chunk[0].function).unwrap();
            for (row, w) in chunk.iter().zip(&cw) {
                let cell = format!("{} {:.3e}", row.report.verdict.symbol(), row.report.p_value);
                write!(out, "  {cell:>w$}").unwrap();
            }
            out.push('\n');
        }
        write!(out, "{:fw$}", "w/l/t").unwrap();
        for (t, w) in self.totals.iter().zip(&cw) {
            let cell = format!("{}/{}/{}", t.wins, t.losses, t.ties);
            write!(out, "  {cell:>w$}").unwrap();
        }
        out.push('\n');
        out
    }
}
