//! Exhaustive solvers for small instances.
//!
//! [`brute_force_pattern`] enumerates every monotone interleaving vector
//! (equivalently every `±` pattern) with both classes sorted by score.
//! [`brute_force_permutation`] goes further and enumerates every ordering of
//! all samples, evaluating the pairwise discriminant and the losses straight
//! from their definitions; it is the check that restricting to sorted
//! classes loses nothing.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::inference::discriminant;
use crate::instance::ScoredInstance;
use crate::interleaving::InterleavingVector;
use crate::loss::{loss_value, LossContext, RankLoss};

/// Largest number of patterns [`brute_force_pattern`] will enumerate.
pub const PATTERN_LIMIT: u128 = 1_000_000;
/// Largest `|P| + |N|` accepted by [`brute_force_permutation`].
pub const PERMUTATION_LIMIT: usize = 7;

/// `C(p + n, p)`, saturating.
pub fn pattern_count(positives: usize, negatives: usize) -> u128 {
    let k = positives.min(negatives) as u128;
    let total = (positives + negatives) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(total - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternOptimum {
    pub opt: InterleavingVector,
    pub objective: f64,
    pub evaluated: u64,
}

/// Maximizes `loss + F` over all monotone interleaving vectors. Ties go to
/// the lexicographically largest vector.
pub fn brute_force_pattern(instance: &ScoredInstance, loss: &RankLoss, ctx: &LossContext) -> Result<PatternOptimum> {
    let p = instance.positives();
    let n = instance.negatives();
    if ctx.positives() != p || ctx.negatives() != n {
        return Err(Error::DimensionMismatch { what: "context size", expected: ctx.positives(), found: p });
    }
    let size = pattern_count(p, n);
    if size > PATTERN_LIMIT {
        return Err(Error::SearchTooLarge { size, limit: PATTERN_LIMIT });
    }
    let sorted = instance.sorted_negatives();
    let mut ranks = vec![1usize; n];
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut evaluated = 0u64;
    loop {
        let iv = InterleavingVector::new(ranks.clone(), p)?;
        let value = loss_value(loss, &iv, ctx)? + discriminant(instance.pos_scores(), &sorted, &iv);
        evaluated += 1;
        if best.as_ref().is_none_or(|(_, b)| value >= *b) {
            best = Some((ranks.clone(), value));
        }
        // Next nondecreasing vector in lexicographic order.
        let Some(j) = ranks.iter().rposition(|&r| r <= p) else { break };
        let next = ranks[j] + 1;
        ranks[j..].fill(next);
    }
    let (ranks, objective) = best.expect("at least one pattern");
    Ok(PatternOptimum { opt: InterleavingVector::new(ranks, p)?, objective, evaluated })
}

/// A sample in an explicit ordering: index into the instance's sorted
/// positives or into its current negative arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Item {
    Pos(usize),
    Neg(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationOptimum {
    pub ordering: Vec<Item>,
    pub objective: f64,
    /// Whether some maximizer (within 1e-12) lists both classes in
    /// nonincreasing score order.
    pub sorted_maximizer_exists: bool,
    pub evaluated: u64,
}

fn score_of(instance: &ScoredInstance, item: Item) -> f64 {
    match item {
        Item::Pos(k) => instance.pos_scores()[k],
        Item::Neg(k) => instance.neg()[k].score,
    }
}

/// Loss of an explicit ordering, straight from the definitions.
pub fn ordering_loss(loss: &RankLoss, ordering: &[Item], positives: usize) -> f64 {
    match loss {
        RankLoss::Ap => {
            let mut seen = 0usize;
            let mut sum = 0.0;
            for (idx, item) in ordering.iter().enumerate() {
                if let Item::Pos(_) = item {
                    seen += 1;
                    sum += seen as f64 / (idx + 1) as f64;
                }
            }
            1.0 - sum / positives as f64
        }
        RankLoss::Ndcg(d) => {
            let gain: f64 = ordering
                .iter()
                .enumerate()
                .filter(|(_, it)| matches!(it, Item::Pos(_)))
                .map(|(idx, _)| d.at(idx + 1))
                .sum();
            let ideal: f64 = (1..=positives).map(|i| d.at(i)).sum();
            1.0 - gain / ideal
        }
    }
}

/// Pairwise discriminant `1/(|P||N|) sum_{x in P, y in N} R_xy (s_x - s_y)`.
pub fn ordering_discriminant(instance: &ScoredInstance, ordering: &[Item]) -> f64 {
    let mut place = vec![0usize; ordering.len()];
    let p = instance.positives();
    for (idx, item) in ordering.iter().enumerate() {
        match *item {
            Item::Pos(k) => place[k] = idx,
            Item::Neg(k) => place[p + k] = idx,
        }
    }
    let mut total = 0.0;
    for x in 0..p {
        for y in 0..instance.negatives() {
            let sign = if place[x] < place[p + y] { 1.0 } else { -1.0 };
            total += sign * (instance.pos_scores()[x] - instance.neg()[y].score);
        }
    }
    total / (p * instance.negatives()) as f64
}

fn classes_sorted(instance: &ScoredInstance, ordering: &[Item]) -> bool {
    let mut last_pos = f64::INFINITY;
    let mut last_neg = f64::INFINITY;
    for &item in ordering {
        let s = score_of(instance, item);
        let last = match item {
            Item::Pos(_) => &mut last_pos,
            Item::Neg(_) => &mut last_neg,
        };
        if s > *last {
            return false;
        }
        *last = s;
    }
    true
}

/// Maximizes `loss + F` over every ordering of all samples.
pub fn brute_force_permutation(instance: &ScoredInstance, loss: &RankLoss) -> Result<PermutationOptimum> {
    const TIE: f64 = 1e-12;
    let p = instance.positives();
    let n = instance.negatives();
    if p + n > PERMUTATION_LIMIT {
        return Err(Error::SearchTooLarge {
            size: (1..=(p + n) as u128).product(),
            limit: (1..=PERMUTATION_LIMIT as u128).product(),
        });
    }
    let mut items: Vec<Item> = (0..p).map(Item::Pos).chain((0..n).map(Item::Neg)).collect();
    let eval = |ordering: &[Item]| ordering_loss(loss, ordering, p) + ordering_discriminant(instance, ordering);

    let mut best = items.clone();
    let mut best_val = eval(&items);
    let mut sorted_flag = classes_sorted(instance, &items);
    let mut evaluated = 1u64;
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; items.len()];
    let mut i = 1;
    while i < items.len() {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            let v = eval(&items);
            evaluated += 1;
            if v > best_val + TIE {
                best_val = v;
                best.clone_from(&items);
                sorted_flag = classes_sorted(instance, &items);
            } else if v >= best_val - TIE {
                sorted_flag |= classes_sorted(instance, &items);
                if v > best_val {
                    best_val = v;
                    best.clone_from(&items);
                }
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(PermutationOptimum { ordering: best, objective: best_val, sorted_maximizer_exists: sorted_flag, evaluated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loss::Discount;

    #[test]
    fn counts() {
        assert_eq!(pattern_count(1, 1), 2);
        assert_eq!(pattern_count(2, 3), 10);
        assert_eq!(pattern_count(5, 9), 2002);
        assert_eq!(pattern_count(200, 200), u128::MAX);
    }

    #[test]
    fn single_pair_enumerations() {
        let inst = ScoredInstance::from_scores(&[0.0], &[0.0]).unwrap();
        let ctx = LossContext::new(&RankLoss::Ap, 1, 1).unwrap();
        let best = brute_force_pattern(&inst, &RankLoss::Ap, &ctx).unwrap();
        assert_eq!(best.evaluated, 2);
        assert_eq!(best.opt.ranks(), &[1]);
        let perm = brute_force_permutation(&inst, &RankLoss::Ap).unwrap();
        assert_eq!(perm.evaluated, 2);
        assert!((perm.objective - 0.5).abs() < 1e-15);
    }

    #[test]
    fn permutation_count() {
        let inst = ScoredInstance::from_scores(&[0.1, 0.2, 0.3], &[0.0, 0.5, 0.9, -0.2]).unwrap();
        let perm = brute_force_permutation(&inst, &RankLoss::Ap).unwrap();
        assert_eq!(perm.evaluated, 5040);
    }

    #[test]
    fn guards() {
        let inst = ScoredInstance::from_scores(&[0.0; 4], &[0.0; 4]).unwrap();
        assert!(matches!(brute_force_permutation(&inst, &RankLoss::Ap), Err(Error::SearchTooLarge { .. })));
        let big = ScoredInstance::from_scores(&[0.0; 20], &[0.0; 20]).unwrap();
        let ctx = LossContext::new(&RankLoss::Ap, 20, 20).unwrap();
        assert!(matches!(brute_force_pattern(&big, &RankLoss::Ap, &ctx), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn ordering_loss_worked_example() {
        // (x1, x3, x8, x4, x5, x2, x6, x7) with x1..x4 positive.
        use Item::{Neg, Pos};
        let ordering = [Pos(0), Pos(2), Neg(3), Pos(3), Neg(0), Pos(1), Neg(1), Neg(2)];
        let ap = ordering_loss(&RankLoss::Ap, &ordering, 4);
        assert!((ap - 7.0 / 48.0).abs() < 1e-12);
        let ndcg = ordering_loss(&RankLoss::Ndcg(Discount::LogConvex), &ordering, 4);
        assert!((ndcg - 0.056).abs() < 5e-4);
    }

    #[test]
    fn counterexample_optimum() {
        let loss = RankLoss::Ndcg(Discount::ChakrabartiNonConvex);
        let inst = ScoredInstance::from_scores(&[0.25], &[0.15, 0.05]).unwrap();
        let ctx = LossContext::new(&loss, 1, 2).unwrap();
        let best = brute_force_pattern(&inst, &loss, &ctx).unwrap();
        let perm = brute_force_permutation(&inst, &loss).unwrap();
        assert!((best.objective - perm.objective).abs() < 1e-12);
        // Putting the positive last gains D(2) - D(3) in loss, which beats
        // the score margin at this scale.
        assert_eq!(best.opt.ranks(), &[1, 1]);
    }
}
