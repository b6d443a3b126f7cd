use gmde::stats::{exact_p_value, signed_ranks, wilcoxon_signed_rank, Verdict};
use gmde::RngStream;
use proptest::prelude::*;

/// Two-sided p by listing every sign assignment of the (tied) ranks.
fn brute_force_p(diffs: &[f64]) -> f64 {
    let mut nz: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    let n = nz.len();
    if n == 0 {
        return 1.0;
    }
    nz.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
    let mut ranks = vec![0.0; n];
    for i in 0..n {
        let same: Vec<usize> = (0..n).filter(|&j| nz[j].abs() == nz[i].abs()).collect();
        let avg = same.iter().map(|&j| (j + 1) as f64).sum::<f64>() / same.len() as f64;
        ranks[i] = avg;
    }
    let observed: f64 = (0..n).filter(|&i| nz[i] > 0.0).map(|i| ranks[i]).sum();
    let (mut le, mut ge) = (0u64, 0u64);
    for mask in 0u64..(1 << n) {
        let s: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        // Rank sums are multiples of 0.5, so these comparisons are exact.
        if s <= observed {
            le += 1;
        }
        if s >= observed {
            ge += 1;
        }
    }
    (2.0 * le.min(ge) as f64 / (1u64 << n) as f64).min(1.0)
}

fn fixture(rng: &mut RngStream, n: usize) -> Vec<f64> {
    // Small integer magnitudes force ties; some zeros are dropped.
    (0..n)
        .map(|_| {
            let mag = rng.below(6) as f64;
            if rng.uniform() < 0.5 { mag } else { -mag }
        })
        .collect()
}

#[test]
fn exact_path_matches_enumeration() {
    let mut rng = RngStream::new(2024);
    for _ in 0..100 {
        for n in 1..=12 {
            let d = fixture(&mut rng, n);
            let ours = exact_p_value(&signed_ranks(&d));
            assert_eq!(ours, brute_force_p(&d), "diffs {d:?}");
        }
    }
}

#[test]
fn all_positive_ten() {
    let a = vec![0.0; 10];
    let b: Vec<f64> = (1..=10).map(f64::from).collect();
    let r = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
    assert_eq!(r.p_value, 2.0 / 1024.0);
    assert_eq!(r.verdict, Verdict::Win);
}

fn samples() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (5usize..30).prop_flat_map(|n| {
        (
            prop::collection::vec(-50i32..50, n),
            prop::collection::vec(-50i32..50, n),
        )
            .prop_map(|(a, b)| {
                (
                    a.into_iter().map(f64::from).collect(),
                    b.into_iter().map(f64::from).collect(),
                )
            })
    })
}

proptest! {
    #[test]
    fn rank_sums_partition((a, b) in samples()) {
        let r = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        let n = r.n_effective as f64;
        prop_assert_eq!(r.sr_plus + r.sr_minus, n * (n + 1.0) / 2.0);
    }

    #[test]
    fn swapping_sides_is_antisymmetric((a, b) in samples()) {
        let ab = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        let ba = wilcoxon_signed_rank(&b, &a, 0.05).unwrap();
        prop_assert_eq!(ab.sr_plus, ba.sr_minus);
        prop_assert_eq!(ab.sr_minus, ba.sr_plus);
        prop_assert_eq!(ab.p_value, ba.p_value);
        prop_assert_eq!(ab.verdict, ba.verdict.flipped());
    }

    #[test]
    fn positive_scaling_keeps_verdict((a, b) in samples(), k in -6i32..6) {
        let c = 2f64.powi(k) * 3.0;
        let sa: Vec<f64> = a.iter().map(|v| v * c).collect();
        let sb: Vec<f64> = b.iter().map(|v| v * c).collect();
        let r1 = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        let r2 = wilcoxon_signed_rank(&sa, &sb, 0.05).unwrap();
        prop_assert_eq!(r1.sr_plus, r2.sr_plus);
        prop_assert_eq!(r1.p_value, r2.p_value);
        prop_assert_eq!(r1.verdict, r2.verdict);
    }
}
