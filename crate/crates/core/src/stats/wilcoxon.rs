use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest effective sample size that uses the exact null distribution.
pub const EXACT_LIMIT: usize = 20;
/// Below this many non-zero differences no test is attempted.
pub const MIN_EFFECTIVE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Win,
    Loss,
    Tie,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Win => "win",
            Verdict::Loss => "loss",
            Verdict::Tie => "tie",
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            Verdict::Win => '+',
            Verdict::Loss => '-',
            Verdict::Tie => '=',
        }
    }

    pub fn flipped(&self) -> Verdict {
        match self {
            Verdict::Win => Verdict::Loss,
            Verdict::Loss => Verdict::Win,
            Verdict::Tie => Verdict::Tie,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PMethod {
    Exact,
    Normal,
    /// Too few non-zero differences; p is reported as 1.
    TooFew,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WilcoxonReport {
    pub n_effective: usize,
    pub sr_plus: f64,
    pub sr_minus: f64,
    pub mr_plus: f64,
    pub mr_minus: f64,
    pub p_value: f64,
    pub method: PMethod,
    pub verdict: Verdict,
}

/// Ranks of `|d|` over the non-zero differences, stored doubled so that
/// average ranks of ties stay integral.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedRanks {
    pub doubled: Vec<u64>,
    pub positive: Vec<bool>,
}

impl SignedRanks {
    pub fn n(&self) -> usize {
        self.doubled.len()
    }

    /// Doubled positive rank sum.
    pub fn doubled_plus(&self) -> u64 {
        self.doubled
            .iter()
            .zip(&self.positive)
            .filter(|(_, &p)| p)
            .map(|(r, _)| r)
            .sum()
    }
}

pub fn signed_ranks(diffs: &[f64]) -> SignedRanks {
    let mut nz: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    nz.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut doubled = vec![0; nz.len()];
    let mut i = 0;
    while i < nz.len() {
        let mut j = i;
        while j + 1 < nz.len() && nz[j + 1].abs() == nz[i].abs() {
            j += 1;
        }
        // Ranks i+1..=j+1 share their average; doubled that is i + j + 2.
        for r in &mut doubled[i..=j] {
            *r = (i + j + 2) as u64;
        }
        i = j + 1;
    }
    SignedRanks {
        doubled,
        positive: nz.iter().map(|d| *d > 0.0).collect(),
    }
}

/// Two-sided p-value from the exact permutation distribution of the positive
/// rank sum: `min(1, 2 · min(P(S ≤ s), P(S ≥ s)))`.
pub fn exact_p_value(ranks: &SignedRanks) -> f64 {
    let n = ranks.n();
    if n == 0 {
        return 1.0;
    }
    let total: u64 = ranks.doubled.iter().sum();
    // counts[s]: number of sign assignments with doubled positive sum s.
    let mut counts = vec![0.0_f64; total as usize + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in &ranks.doubled {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let s = ranks.doubled_plus() as usize;
    let lower: f64 = counts[..=s].iter().sum();
    let upper: f64 = counts[s..].iter().sum();
    let all = 2f64.powi(n as i32);
    (2.0 * lower.min(upper) / all).min(1.0)
}

/// Two-sided normal approximation with tie and continuity corrections.
pub fn normal_p_value(ranks: &SignedRanks) -> f64 {
    let n = ranks.n() as f64;
    if n == 0.0 {
        return 1.0;
    }
    let sr_plus = ranks.doubled_plus() as f64 / 2.0;
    let mean = n * (n + 1.0) / 4.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < ranks.doubled.len() {
        let j = ranks.doubled[i..]
            .iter()
            .take_while(|r| **r == ranks.doubled[i])
            .count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((sr_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

/// Paired signed-rank test on `d_i = b_i − a_i`, where `a` is the candidate
/// and `b` the opponent under minimization, so positive ranks favour the
/// candidate. Fewer than [`MIN_EFFECTIVE`] non-zero differences give a tie
/// with p = 1.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<WilcoxonReport> {
    if a.len() != b.len() {
        return Err(Error::Stats(format!(
            "paired samples differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Stats(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Stats("samples must be finite".into()));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let ranks = signed_ranks(&diffs);
    let n = ranks.n();
    let plus2 = ranks.doubled_plus();
    let total2 = (n * (n + 1)) as u64;
    let sr_plus = plus2 as f64 / 2.0;
    let sr_minus = (total2 - plus2) as f64 / 2.0;
    let n_plus = ranks.positive.iter().filter(|p| **p).count();
    let n_minus = n - n_plus;
    let mean_of = |sum: f64, count: usize| if count > 0 { sum / count as f64 } else { 0.0 };

    let (p_value, method) = if n < MIN_EFFECTIVE {
        (1.0, PMethod::TooFew)
    } else if n <= EXACT_LIMIT {
        (exact_p_value(&ranks), PMethod::Exact)
    } else {
        (normal_p_value(&ranks), PMethod::Normal)
    };
    let verdict = if p_value < alpha && sr_plus > sr_minus {
        Verdict::Win
    } else if p_value < alpha && sr_plus < sr_minus {
        Verdict::Loss
    } else {
        Verdict::Tie
    };
    Ok(WilcoxonReport {
        n_effective: n,
        sr_plus,
        sr_minus,
        mr_plus: mean_of(sr_plus, n_plus),
        mr_minus: mean_of(sr_minus, n_minus),
        p_value,
        method,
        verdict,
    })
}
