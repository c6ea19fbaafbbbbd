//! Loss-augmented inference: find the interleaving ranks that maximize
//! `loss(R) + F(R)` where `F` is the pairwise discriminant
//! `F = 1/(|P||N|) sum_{x in P, y in N} R_xy (s_x - s_y)`.
//!
//! The objective splits into per-negative terms `f_j(r_j)`; for losses whose
//! discrete derivative is monotone in `j`, the per-negative maximizers are
//! themselves monotone, so the maximizer of a median negative splits the
//! remaining problem in two. [`opt_ranks`] exploits that; [`sort_baseline`]
//! sorts all negatives and scans them in order.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Scored, ScoredInstance};
use crate::interleaving::{first_descent, InterleavingVector};
use crate::loss::{delta_step, loss_value, LossContext, RankLoss};
pub use crate::select::SelectionMode;
use crate::select::Selector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InferenceOptions {
    pub selection: SelectionMode,
    /// Run even when the loss is not QS-suitable. The result is then only
    /// trustworthy after an [`oracle_check`].
    pub allow_unsuitable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceResult {
    /// Interleaving rank of the `j`-th highest scored negative.
    pub opt: InterleavingVector,
    /// `loss + F` at `opt`.
    pub objective: f64,
    pub loss_at_opt: f64,
    /// Score comparisons between negatives (median/partition or sort).
    pub comparisons: u64,
    /// Discrete derivative evaluations made while scanning ranks.
    pub scan_steps: u64,
}

fn check_ctx(instance: &ScoredInstance, ctx: &LossContext) -> Result<()> {
    if ctx.positives() != instance.positives() {
        return Err(Error::DimensionMismatch {
            what: "positives",
            expected: ctx.positives(),
            found: instance.positives(),
        });
    }
    if ctx.negatives() != instance.negatives() {
        return Err(Error::DimensionMismatch {
            what: "negatives",
            expected: ctx.negatives(),
            found: instance.negatives(),
        });
    }
    Ok(())
}

#[inline]
fn f_step(loss: &RankLoss, ctx: &LossContext, pos: &[f64], s_star: f64, j: usize, i: usize) -> f64 {
    let pairs = (ctx.positives() * ctx.negatives()) as f64;
    2.0 * (pos[i - 1] - s_star) / pairs + delta_step(loss, ctx, j, i)
}

/// `f_j(i + 1) - f_j(i)` for the negative of sorted rank `j` with score
/// `s_star`, `1 <= i <= p`.
pub fn f_derivative(
    loss: &RankLoss,
    ctx: &LossContext,
    pos_scores: &[f64],
    s_star: f64,
    j: usize,
    i: usize,
) -> Result<f64> {
    if pos_scores.len() != ctx.positives() {
        return Err(Error::DimensionMismatch {
            what: "positive scores",
            expected: ctx.positives(),
            found: pos_scores.len(),
        });
    }
    crate::loss::delta_derivative(loss, ctx, j, i)?;
    Ok(f_step(loss, ctx, pos_scores, s_star, j, i))
}

/// Largest maximizer of `f_j` over `[lp, rp]`, found with one pass over the
/// discrete derivatives. Only `pos[lp - 1 .. rp - 1]` is read.
#[inline]
#[allow(clippy::too_many_arguments)]
fn scan(
    loss: &RankLoss,
    ctx: &LossContext,
    pos: &[f64],
    s_star: f64,
    j: usize,
    lp: usize,
    rp: usize,
    steps: &mut u64,
) -> usize {
    debug_assert!(1 <= lp && lp <= rp && rp <= pos.len() + 1);
    let mut best = lp;
    let mut best_val = 0.0;
    let mut val = 0.0;
    for i in lp..rp {
        val += f_step(loss, ctx, pos, s_star, j, i);
        if val >= best_val {
            best_val = val;
            best = i + 1;
        }
    }
    *steps += (rp - lp) as u64;
    best
}

/// Largest `i` in `[lp, rp]` maximizing `f_j(i)`.
pub fn opt_rank_scan(
    loss: &RankLoss,
    ctx: &LossContext,
    pos_scores: &[f64],
    s_star: f64,
    j: usize,
    lp: usize,
    rp: usize,
) -> Result<usize> {
    if pos_scores.len() != ctx.positives() {
        return Err(Error::DimensionMismatch {
            what: "positive scores",
            expected: ctx.positives(),
            found: pos_scores.len(),
        });
    }
    if lp == 0 || lp > rp || rp > ctx.positives() + 1 {
        return Err(Error::InvalidRange { lo: lp, hi: rp, len: ctx.positives() + 1 });
    }
    if j == 0 || j > ctx.negatives() {
        return Err(Error::OutOfRange { what: "j", value: j, lo: 1, hi: ctx.negatives() });
    }
    let mut steps = 0;
    Ok(scan(loss, ctx, pos_scores, s_star, j, lp, rp, &mut steps))
}

fn guard_loss(loss: &RankLoss, opts: &InferenceOptions) -> Result<()> {
    if !loss.is_qs_suitable() && !opts.allow_unsuitable {
        return Err(Error::UnsuitableLoss);
    }
    Ok(())
}

/// Divide and conquer loss-augmented inference.
///
/// Picks the median of the current block of negatives, partitions the block
/// around it, finds its optimal rank by scanning the allowed interval, and
/// recurses on both halves with the interval split at that rank. A block
/// whose interval has collapsed to one rank is assigned without further
/// work. Negatives are rearranged in place; on return every block of equal
/// rank holds exactly the negatives of the matching sorted positions.
pub fn opt_ranks(
    instance: &mut ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    opts: &InferenceOptions,
) -> Result<InferenceResult> {
    guard_loss(loss, opts)?;
    check_ctx(instance, ctx)?;
    let p = instance.positives();
    let n = instance.negatives();
    let pos: Vec<f64> = instance.pos_scores().to_vec();
    let neg = instance.neg_mut();

    let mut selector = Selector::new(opts.selection);
    let mut steps = 0u64;
    let mut opt = vec![0usize; n];
    // (l, r, lp, rp): negatives at sorted positions l..=r (0-based) have
    // optimal ranks in lp..=rp.
    let mut work = vec![(0usize, n - 1, 1usize, p + 1)];
    while let Some((l, r, lp, rp)) = work.pop() {
        if lp == rp {
            opt[l..=r].fill(lp);
            continue;
        }
        let m = selector.place_median(neg, l, r);
        let best = scan(loss, ctx, &pos, neg[m].score, m + 1, lp, rp, &mut steps);
        opt[m] = best;
        if l < m {
            work.push((l, m - 1, lp, best));
        }
        if m < r {
            work.push((m + 1, r, best, rp));
        }
    }

    finish(instance, loss, ctx, opt, selector.comparisons(), steps)
}

/// Sort-based inference: sorts every negative, then scans each one in order
/// starting from the previous negative's rank.
pub fn sort_baseline(
    instance: &mut ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    opts: &InferenceOptions,
) -> Result<InferenceResult> {
    guard_loss(loss, opts)?;
    check_ctx(instance, ctx)?;
    let p = instance.positives();
    let pos: Vec<f64> = instance.pos_scores().to_vec();
    let neg = instance.neg_mut();
    let mut comparisons = 0u64;
    neg.sort_by(|a, b| {
        comparisons += 1;
        a.cmp_desc(b)
    });
    let mut steps = 0u64;
    let mut prev = 1;
    let opt = neg
        .iter()
        .enumerate()
        .map(|(j, s)| {
            prev = scan(loss, ctx, &pos, s.score, j + 1, prev, p + 1, &mut steps);
            prev
        })
        .collect();
    finish(instance, loss, ctx, opt, comparisons, steps)
}

fn finish(
    instance: &ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    opt: Vec<usize>,
    comparisons: u64,
    scan_steps: u64,
) -> Result<InferenceResult> {
    let opt = InterleavingVector::new(opt, instance.positives())?;
    let loss_at_opt = loss_value(loss, &opt, ctx)?;
    let objective = loss_at_opt + discriminant(instance.pos_scores(), instance.neg(), &opt);
    Ok(InferenceResult { opt, objective, loss_at_opt, comparisons, scan_steps })
}

/// Per-sample coefficients `c+` (positives, descending) and `c-` (negatives,
/// sorted order) such that `F = sum c+_i s+_i + sum c-_j s*_j`.
pub fn coefficients(iv: &InterleavingVector) -> (Vec<f64>, Vec<f64>) {
    let p = iv.positives() as f64;
    let n = iv.negatives() as f64;
    let pairs = p * n;
    let pos = iv
        .positive_ranks()
        .into_iter()
        .map(|r| (n + 2.0 - 2.0 * r as f64) / pairs)
        .collect();
    let neg = iv.ranks().iter().map(|&r| (p + 2.0 - 2.0 * r as f64) / pairs).collect();
    (pos, neg)
}

/// `F` in coefficient form. `neg` must be arranged so that each run of equal
/// ranks in `iv` holds the matching sorted negatives (any order inside the
/// run); a fully sorted array always qualifies.
pub(crate) fn discriminant(pos: &[f64], neg: &[Scored], iv: &InterleavingVector) -> f64 {
    let (cp, cn) = coefficients(iv);
    let fp: f64 = cp.iter().zip(pos).map(|(c, s)| c * s).sum();
    let fn_: f64 = cn.iter().zip(neg).map(|(c, s)| c * s.score).sum();
    fp + fn_
}

/// `F` at the ground-truth ranking: mean positive minus mean negative score.
pub fn ground_truth_discriminant(instance: &ScoredInstance) -> f64 {
    let mp = instance.pos_scores().iter().sum::<f64>() / instance.positives() as f64;
    let mn = instance.neg().iter().map(|s| s.score).sum::<f64>() / instance.negatives() as f64;
    mp - mn
}

/// `loss + F` of the ranking induced by `iv`.
pub fn objective_value(
    instance: &ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    iv: &InterleavingVector,
) -> Result<f64> {
    check_ctx(instance, ctx)?;
    let loss = loss_value(loss, iv, ctx)?;
    Ok(loss + discriminant(instance.pos_scores(), &instance.sorted_negatives(), iv))
}

/// Per-negative largest maximizer of `f_j` over the full range `[1, p + 1]`,
/// without any monotonicity constraint. Negatives in sorted order.
pub fn per_j_argmax(instance: &ScoredInstance, loss: &RankLoss, ctx: &LossContext) -> Result<Vec<usize>> {
    check_ctx(instance, ctx)?;
    let p = instance.positives();
    let mut steps = 0;
    Ok(instance
        .sorted_negatives()
        .iter()
        .enumerate()
        .map(|(j, s)| scan(loss, ctx, instance.pos_scores(), s.score, j + 1, 1, p + 1, &mut steps))
        .collect())
}

/// Result of checking an inference run against exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Per-negative maximizers ignoring monotonicity.
    pub unconstrained: Vec<usize>,
    /// First position where `unconstrained` decreases, if it does.
    pub greedy_violation: Option<usize>,
    pub optimum: InterleavingVector,
    pub optimum_objective: f64,
    /// `optimum_objective - result.objective`.
    pub gap: f64,
}

impl OracleReport {
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.greedy_violation.is_none() && self.gap.abs() <= tol
    }
}

/// Compares `result` with the exhaustive pattern search and checks whether
/// per-negative greedy maximization yields a valid (monotone) vector.
pub fn oracle_check(
    instance: &ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    result: &InferenceResult,
) -> Result<OracleReport> {
    let unconstrained = per_j_argmax(instance, loss, ctx)?;
    let greedy_violation = first_descent(&unconstrained);
    let best = crate::oracle::brute_force_pattern(instance, loss, ctx)?;
    Ok(OracleReport {
        unconstrained,
        greedy_violation,
        gap: best.objective - result.objective,
        optimum: best.opt,
        optimum_objective: best.objective,
    })
}

/// [`opt_ranks`] on any loss, followed by an [`oracle_check`].
pub fn opt_ranks_checked(
    instance: &mut ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    selection: SelectionMode,
) -> Result<(InferenceResult, OracleReport)> {
    let opts = InferenceOptions { selection, allow_unsuitable: true };
    let result = opt_ranks(instance, loss, ctx, &opts)?;
    let report = oracle_check(instance, loss, ctx, &result)?;
    Ok((result, report))
}
