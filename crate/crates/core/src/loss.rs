//! AP and NDCG ranking losses.
//!
//! Both losses decompose over negatives: `loss = sum_j delta_j(r_j)` where
//! `r_j` is the interleaving rank of the `j`-th highest scored negative.
//! The discrete derivative `delta_j(i + 1) - delta_j(i)` has a closed form
//! for both, and is nondecreasing in `j` (the property the divide and
//! conquer solver relies on) whenever the NDCG discount is convex.

use crate::error::{Error, Result};
use crate::interleaving::InterleavingVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discount {
    /// `D(i) = 1 / log2(1 + i)`. Convex and strictly decreasing.
    LogConvex,
    /// `D(1) = D(2) = 1`, `D(i) = 1 / log2(i)` for `i > 2`. Not convex at
    /// the start, which breaks greedy loss-augmented inference.
    ChakrabartiNonConvex,
}

impl Discount {
    /// Discount at 1-based position `i`.
    #[inline]
    pub fn at(self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        match self {
            Discount::LogConvex => 1.0 / libm::log2(1.0 + i as f64),
            Discount::ChakrabartiNonConvex => {
                if i <= 2 {
                    1.0
                } else {
                    1.0 / libm::log2(i as f64)
                }
            }
        }
    }

    pub fn is_convex(self) -> bool {
        matches!(self, Discount::LogConvex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankLoss {
    Ap,
    Ndcg(Discount),
}

impl RankLoss {
    /// Whether the loss satisfies the conditions the divide and conquer
    /// solver needs. AP always does; NDCG only with a convex discount.
    pub fn is_qs_suitable(&self) -> bool {
        match self {
            RankLoss::Ap => true,
            RankLoss::Ndcg(d) => d.is_convex(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RankLoss::Ap => "ap",
            RankLoss::Ndcg(Discount::LogConvex) => "ndcg",
            RankLoss::Ndcg(Discount::ChakrabartiNonConvex) => "ndcg-nonconvex",
        }
    }
}

/// Problem size plus the precomputed NDCG normalizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossContext {
    positives: usize,
    negatives: usize,
    ndcg_norm: Option<f64>,
}

impl LossContext {
    pub fn new(loss: &RankLoss, positives: usize, negatives: usize) -> Result<Self> {
        if positives == 0 || negatives == 0 {
            return Err(Error::EmptyClass { positives, negatives });
        }
        let ndcg_norm = match loss {
            RankLoss::Ap => None,
            RankLoss::Ndcg(d) => Some((1..=positives).map(|i| d.at(i)).sum()),
        };
        Ok(Self { positives, negatives, ndcg_norm })
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    pub fn negatives(&self) -> usize {
        self.negatives
    }

    /// `C = sum_{i=1..p} D(i)`, present for NDCG contexts.
    pub fn ndcg_norm(&self) -> Option<f64> {
        self.ndcg_norm
    }

    fn norm(&self) -> Result<f64> {
        self.ndcg_norm
            .ok_or(Error::InvalidConfig("NDCG loss evaluated with a context built for AP"))
    }

    fn check(&self, iv: &InterleavingVector) -> Result<()> {
        if iv.positives() != self.positives {
            return Err(Error::DimensionMismatch {
                what: "positives",
                expected: self.positives,
                found: iv.positives(),
            });
        }
        if iv.negatives() != self.negatives {
            return Err(Error::DimensionMismatch {
                what: "negatives",
                expected: self.negatives,
                found: iv.negatives(),
            });
        }
        Ok(())
    }
}

/// `1 - (1/|P|) sum_k k / pos_k` where `pos_k` is the position of the k-th
/// positive.
pub fn ap_loss(iv: &InterleavingVector, ctx: &LossContext) -> Result<f64> {
    ctx.check(iv)?;
    let precision: f64 = iv
        .positive_positions()
        .iter()
        .enumerate()
        .map(|(k, &pos)| (k + 1) as f64 / pos as f64)
        .sum();
    Ok(1.0 - precision / ctx.positives as f64)
}

/// `1 - sum_k D(pos_k) / C`.
pub fn ndcg_loss(iv: &InterleavingVector, ctx: &LossContext, discount: Discount) -> Result<f64> {
    ctx.check(iv)?;
    let norm = ctx.norm()?;
    let gain: f64 = iv.positive_positions().iter().map(|&pos| discount.at(pos)).sum();
    Ok(1.0 - gain / norm)
}

/// Direct evaluation of `loss` on the ranking induced by `iv`.
pub fn loss_value(loss: &RankLoss, iv: &InterleavingVector, ctx: &LossContext) -> Result<f64> {
    match loss {
        RankLoss::Ap => ap_loss(iv, ctx),
        RankLoss::Ndcg(d) => ndcg_loss(iv, ctx, *d),
    }
}

/// Unchecked `delta_j(i + 1) - delta_j(i)` for 1-based `j` and `i`.
#[inline]
pub(crate) fn delta_step(loss: &RankLoss, ctx: &LossContext, j: usize, i: usize) -> f64 {
    match loss {
        RankLoss::Ap => {
            let (jf, i_f) = (j as f64, i as f64);
            ((jf - 1.0) / (jf + i_f - 1.0) - jf / (jf + i_f)) / ctx.positives as f64
        }
        RankLoss::Ndcg(d) => {
            // Contexts are always built for the loss they are used with on
            // hot paths; the checked wrapper reports a mismatch instead.
            let norm = ctx.ndcg_norm.unwrap_or(1.0);
            (d.at(i + j) - d.at(i + j - 1)) / norm
        }
    }
}

fn check_ji(ctx: &LossContext, j: usize, i: usize, i_hi: usize) -> Result<()> {
    if j == 0 || j > ctx.negatives {
        return Err(Error::OutOfRange { what: "j", value: j, lo: 1, hi: ctx.negatives });
    }
    if i == 0 || i > i_hi {
        return Err(Error::OutOfRange { what: "i", value: i, lo: 1, hi: i_hi });
    }
    Ok(())
}

/// `delta_j(i + 1) - delta_j(i)` for `1 <= j <= n`, `1 <= i <= p`.
pub fn delta_derivative(loss: &RankLoss, ctx: &LossContext, j: usize, i: usize) -> Result<f64> {
    check_ji(ctx, j, i, ctx.positives)?;
    if matches!(loss, RankLoss::Ndcg(_)) {
        ctx.norm()?;
    }
    Ok(delta_step(loss, ctx, j, i))
}

/// `delta_j(i)` for `1 <= i <= p + 1`, accumulated backwards from
/// `delta_j(p + 1) = 0`.
pub fn delta_value(loss: &RankLoss, ctx: &LossContext, j: usize, i: usize) -> Result<f64> {
    check_ji(ctx, j, i, ctx.positives + 1)?;
    if matches!(loss, RankLoss::Ndcg(_)) {
        ctx.norm()?;
    }
    Ok(-(i..=ctx.positives).map(|k| delta_step(loss, ctx, j, k)).sum::<f64>())
}

/// `sum_j delta_j(r_j)`.
pub fn decomposed_loss(loss: &RankLoss, ctx: &LossContext, iv: &InterleavingVector) -> Result<f64> {
    ctx.check(iv)?;
    iv.ranks()
        .iter()
        .enumerate()
        .map(|(j, &r)| delta_value(loss, ctx, j + 1, r))
        .sum()
}

/// Exhaustively checks that the discrete derivative is nondecreasing in `j`
/// over the whole `(j, i)` grid of `ctx`.
pub fn check_c2(loss: &RankLoss, ctx: &LossContext) -> bool {
    const TOL: f64 = 1e-12;
    if matches!(loss, RankLoss::Ndcg(_)) && ctx.ndcg_norm.is_none() {
        return false;
    }
    (1..ctx.negatives).all(|j| {
        (1..=ctx.positives)
            .all(|i| delta_step(loss, ctx, j + 1, i) >= delta_step(loss, ctx, j, i) - TOL)
    })
}
