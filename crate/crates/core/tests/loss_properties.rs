mod common;

use common::*;
use proptest::prelude::*;
use qsrank_core::interleaving::InterleavingVector;
use qsrank_core::loss::{self, check_c2, decomposed_loss, delta_derivative, delta_value, loss_value};
use qsrank_core::{Discount, LossContext, RankLoss};
use rand::Rng;

const NDCG: RankLoss = RankLoss::Ndcg(Discount::LogConvex);
const NONCONVEX: RankLoss = RankLoss::Ndcg(Discount::ChakrabartiNonConvex);

fn random_ranks(rng: &mut rand::rngs::StdRng, p: usize, n: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (0..n).map(|_| rng.random_range(1..=p + 1)).collect();
    r.sort_unstable();
    r
}

fn direct(loss: &RankLoss, pattern: &[bool]) -> f64 {
    match loss {
        RankLoss::Ap => direct_ap(pattern),
        RankLoss::Ndcg(Discount::LogConvex) => direct_ndcg(pattern, log_discount),
        RankLoss::Ndcg(Discount::ChakrabartiNonConvex) => direct_ndcg(pattern, chakrabarti_discount),
    }
}

#[test]
fn ap_all_negatives_first_matches_direct_definition() {
    let ctx = LossContext::new(&RankLoss::Ap, 2, 3).unwrap();
    let iv = InterleavingVector::new(vec![1, 1, 1], 2).unwrap();
    let expected = direct_ap(&[false, false, false, true, true]);
    assert!((loss::ap_loss(&iv, &ctx).unwrap() - expected).abs() < 1e-15);
}

#[test]
fn direct_and_decomposed_agree_on_random_instances() {
    let mut rng = rng(20);
    for loss in [RankLoss::Ap, NDCG, NONCONVEX] {
        for _ in 0..200 {
            let p = rng.random_range(1..=6);
            let n = rng.random_range(1..=8);
            let ranks = random_ranks(&mut rng, p, n);
            let iv = InterleavingVector::new(ranks.clone(), p).unwrap();
            let ctx = LossContext::new(&loss, p, n).unwrap();
            let oracle = direct(&loss, &pattern_from_ranks(&ranks, p));
            let value = loss_value(&loss, &iv, &ctx).unwrap();
            let decomposed = decomposed_loss(&loss, &ctx, &iv).unwrap();
            assert!((value - oracle).abs() < 1e-9, "{loss:?} {ranks:?}");
            assert!((decomposed - oracle).abs() < 1e-9, "{loss:?} {ranks:?}");
            assert!((-1e-12..=1.0 + 1e-12).contains(&value));
        }
    }
}

#[test]
fn decomposition_exhaustive_small() {
    for loss in [RankLoss::Ap, NDCG] {
        for p in 1..=4 {
            for n in 1..=4 {
                let ctx = LossContext::new(&loss, p, n).unwrap();
                for ranks in all_monotone(p, n) {
                    let iv = InterleavingVector::new(ranks.clone(), p).unwrap();
                    let oracle = direct(&loss, &pattern_from_ranks(&ranks, p));
                    assert!((decomposed_loss(&loss, &ctx, &iv).unwrap() - oracle).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn ap_derivative_matches_series() {
    // delta_j(i) = 1/p sum_{k=i..p} (j/(j+k) - (j-1)/(j+k-1)), summed directly.
    let series = |p: usize, j: usize, i: usize| -> f64 {
        let (jf, pf) = (j as f64, p as f64);
        (i..=p).map(|k| jf / (jf + k as f64) - (jf - 1.0) / (jf + k as f64 - 1.0)).sum::<f64>() / pf
    };
    assert!((series(4, 1, 2) - series(4, 1, 1) - (-0.125)).abs() < 1e-15);
    for p in 1..=7 {
        for n in 1..=7 {
            let ctx = LossContext::new(&RankLoss::Ap, p, n).unwrap();
            for j in 1..=n {
                for i in 1..=p + 1 {
                    let v = delta_value(&RankLoss::Ap, &ctx, j, i).unwrap();
                    assert!((v - series(p, j, i)).abs() < 1e-12);
                    if i <= p {
                        let d = delta_derivative(&RankLoss::Ap, &ctx, j, i).unwrap();
                        assert!((d - (series(p, j, i + 1) - series(p, j, i))).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn telescoping() {
    for loss in [RankLoss::Ap, NDCG, NONCONVEX] {
        for (p, n) in [(1, 1), (5, 3), (9, 12)] {
            let ctx = LossContext::new(&loss, p, n).unwrap();
            for j in 1..=n {
                let sum: f64 = (1..=p).map(|i| delta_derivative(&loss, &ctx, j, i).unwrap()).sum();
                assert!((sum + delta_value(&loss, &ctx, j, 1).unwrap()).abs() < 1e-12);
                assert_eq!(delta_value(&loss, &ctx, j, p + 1).unwrap(), 0.0);
            }
        }
    }
}

#[test]
fn c2_holds_on_grids_up_to_50() {
    for p in 1..=50 {
        for n in 1..=50 {
            for loss in [RankLoss::Ap, NDCG] {
                let ctx = LossContext::new(&loss, p, n).unwrap();
                assert!(check_c2(&loss, &ctx), "{loss:?} p={p} n={n}");
            }
        }
    }
}

#[test]
fn c2_fails_for_nonconvex_discount() {
    for p in 1..=10 {
        for n in 2..=10 {
            let ctx = LossContext::new(&NONCONVEX, p, n).unwrap();
            assert!(!check_c2(&NONCONVEX, &ctx));
        }
    }
}

#[test]
fn nonconvex_counterexample_deltas() {
    // P = 1, N = 2: delta_1(1) = delta_1(2) = delta_2(2) = 0,
    // delta_2(1) = D(2) - D(3).
    let ctx = LossContext::new(&NONCONVEX, 1, 2).unwrap();
    assert_eq!(delta_value(&NONCONVEX, &ctx, 1, 1).unwrap(), 0.0);
    assert_eq!(delta_value(&NONCONVEX, &ctx, 1, 2).unwrap(), 0.0);
    assert_eq!(delta_value(&NONCONVEX, &ctx, 2, 2).unwrap(), 0.0);
    let v = delta_value(&NONCONVEX, &ctx, 2, 1).unwrap();
    assert!((v - (1.0 - 1.0 / 3f64.log2())).abs() < 1e-15);
}

proptest! {
    #[test]
    fn pattern_roundtrip(p in 1usize..8, raw in prop::collection::vec(1usize..9, 1..12)) {
        let mut ranks: Vec<usize> = raw.into_iter().map(|r| r.min(p + 1)).collect();
        ranks.sort_unstable();
        let iv = InterleavingVector::new(ranks.clone(), p).unwrap();
        let pattern = iv.to_pattern();
        let expected: Vec<bool> = pattern_from_ranks(&ranks, p);
        let got: Vec<bool> = pattern.iter().map(|c| *c == qsrank_core::Class::Positive).collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(InterleavingVector::from_pattern(&pattern).unwrap(), iv.clone());
        prop_assert_eq!(InterleavingVector::parse_pattern(&iv.pattern_string()).unwrap(), iv);
    }

    #[test]
    fn pattern_to_ranks_to_pattern(bits in prop::collection::vec(any::<bool>(), 2..16)) {
        prop_assume!(bits.iter().any(|&b| b) && bits.iter().any(|&b| !b));
        let s: String = bits.iter().map(|&b| if b { '+' } else { '-' }).collect();
        let iv = InterleavingVector::parse_pattern(&s).unwrap();
        prop_assert_eq!(iv.pattern_string(), s);
    }

    #[test]
    fn loss_in_unit_interval(p in 1usize..10, raw in prop::collection::vec(1usize..12, 1..15)) {
        let mut ranks: Vec<usize> = raw.into_iter().map(|r| r.min(p + 1)).collect();
        ranks.sort_unstable();
        let n = ranks.len();
        let iv = InterleavingVector::new(ranks, p).unwrap();
        for loss in [RankLoss::Ap, NDCG, NONCONVEX] {
            let ctx = LossContext::new(&loss, p, n).unwrap();
            let v = loss_value(&loss, &iv, &ctx).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
    }
}
