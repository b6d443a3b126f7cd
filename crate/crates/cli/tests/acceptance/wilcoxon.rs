use gmde::stats::{exact_p_value, signed_ranks, wilcoxon_signed_rank, PMethod, Verdict};
use gmde::RngStream;

/// Two-sided p by visiting all 2^n sign patterns. Ranks are kept doubled so
/// tied averages stay integral and every comparison is exact.
fn enumerate_p(diffs: &[f64]) -> f64 {
    let nz: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    let n = nz.len();
    if n == 0 {
        return 1.0;
    }
    let rank2 = |i: usize| -> u64 {
        let below = nz.iter().filter(|d| d.abs() < nz[i].abs()).count() as u64;
        let equal = nz.iter().filter(|d| d.abs() == nz[i].abs()).count() as u64;
        2 * below + equal + 1
    };
    let ranks: Vec<u64> = (0..n).map(rank2).collect();
    let observed: u64 = (0..n).filter(|&i| nz[i] > 0.0).map(|i| ranks[i]).sum();
    let (mut low, mut high) = (0u64, 0u64);
    for mask in 0u64..1 << n {
        let s: u64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        low += u64::from(s <= observed);
        high += u64::from(s >= observed);
    }
    (2.0 * low.min(high) as f64 / (1u64 << n) as f64).min(1.0)
}

pub fn criterion() -> Result<String, String> {
    let mut rng = RngStream::new(77);
    let mut checked = 0;
    for fixture in 0..100 {
        for n in 1..=12 {
            let diffs: Vec<f64> = (0..n)
                .map(|_| {
                    let mag = rng.below(5) as f64;
                    if rng.uniform() < 0.5 { mag } else { -mag }
                })
                .collect();
            let want = enumerate_p(&diffs);
            let got = exact_p_value(&signed_ranks(&diffs));
            if (got - want).abs() > 1e-12 {
                return Err(format!("fixture {fixture}, n {n}: p {got} vs enumerated {want} for {diffs:?}"));
            }
            let zeros = vec![0.0; n];
            let report = wilcoxon_signed_rank(&zeros, &diffs, 0.05).map_err(|e| e.to_string())?;
            if report.method == PMethod::Exact && (report.p_value - want).abs() > 1e-12 {
                return Err(format!("fixture {fixture}, n {n}: test p {} vs enumerated {want}", report.p_value));
            }
            checked += 1;
        }
    }
    let a = vec![0.0; 10];
    let b: Vec<f64> = (1..=10).map(f64::from).collect();
    let r = wilcoxon_signed_rank(&a, &b, 0.05).map_err(|e| e.to_string())?;
    if r.p_value != 2.0 / 1024.0 || r.verdict != Verdict::Win {
        return Err(format!("all-positive n=10 gave p {} and {:?}", r.p_value, r.verdict));
    }
    Ok(format!("{checked} fixtures with n <= 12 match enumeration; all-positive n=10 gives p = 2/1024"))
}
