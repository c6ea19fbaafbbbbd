//! Timing and comparison counts for the inference algorithms.
//!
//! Every configuration gets one seeded instance; repeats rerun the same
//! instance with the same pivot seed, so comparison counts repeat exactly
//! and only wall time varies. Runs are serialized.

use std::time::Instant;

use qsrank_core::{opt_ranks, sort_baseline, InferenceOptions, LossContext, RankLoss, ScoredInstance, SelectionMode};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::BenchRow;
use crate::synthetic::uniform_scores;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Divide and conquer with randomized pivots.
    Qs,
    /// Divide and conquer with median-of-medians pivots.
    QsMom,
    /// Full sort of the negatives, then a monotone scan.
    Sort,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Qs => "qs",
            Algo::QsMom => "qs-mom",
            Algo::Sort => "sort",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "qs" => Ok(Algo::Qs),
            "qs-mom" => Ok(Algo::QsMom),
            "sort" => Ok(Algo::Sort),
            other => Err(Error::Invalid(format!("unknown algorithm {other:?}; expected qs, qs-mom or sort"))),
        }
    }
}

/// Preset `(p, n)` grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Total size grows with one positive per ten negatives.
    Total,
    /// 32 positives, growing negatives.
    Negatives,
    /// 2^16 negatives, growing positives.
    Positives,
}

impl Sweep {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(Sweep::Total),
            "negatives" => Ok(Sweep::Negatives),
            "positives" => Ok(Sweep::Positives),
            other => Err(Error::Invalid(format!("unknown sweep {other:?}; expected total, negatives or positives"))),
        }
    }

    pub fn points(self) -> Vec<(usize, usize)> {
        match self {
            Sweep::Total => (10..=20).step_by(2).map(|k| ((1usize << k) / 11, (1usize << k) * 10 / 11)).collect(),
            Sweep::Negatives => (10..=20).step_by(2).map(|k| (32, 1usize << k)).collect(),
            Sweep::Positives => (2..=12).step_by(2).map(|k| (1usize << k, 1 << 16)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub loss: RankLoss,
    pub points: Vec<(usize, usize)>,
    pub algos: Vec<Algo>,
    pub repeats: usize,
    pub seed: u64,
}

/// Median wall time and comparison count for one `(algo, p, n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchPoint {
    pub algo: String,
    pub loss: String,
    pub p: usize,
    pub n: usize,
    pub median_wall_ns: u64,
    pub comparisons: u64,
    pub comparisons_per_n: f64,
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// One timed run; returns wall time and comparison count.
pub fn time_once(
    algo: Algo,
    instance: &ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    seed: u64,
) -> Result<(u64, u64)> {
    let mut work = instance.clone();
    let selection = match algo {
        Algo::QsMom => SelectionMode::MedianOfMedians,
        _ => SelectionMode::Randomized { seed },
    };
    let opts = InferenceOptions { selection, allow_unsuitable: false };
    let start = Instant::now();
    let result = match algo {
        Algo::Qs | Algo::QsMom => opt_ranks(&mut work, loss, ctx, &opts)?,
        Algo::Sort => sort_baseline(&mut work, loss, ctx, &opts)?,
    };
    let wall = start.elapsed().as_nanos() as u64;
    Ok((wall, result.comparisons))
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.repeats == 0 {
        return Err(Error::Invalid("repeats must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for (index, &(p, n)) in config.points.iter().enumerate() {
        let (pos, neg) = uniform_scores(p, n, instance_seed(config.seed, index));
        let instance = ScoredInstance::from_scores(&pos, &neg)?;
        let ctx = LossContext::new(&config.loss, p, n)?;
        for &algo in &config.algos {
            for repeat in 0..config.repeats {
                let (wall_ns, comparisons) = time_once(algo, &instance, &config.loss, &ctx, config.seed)?;
                rows.push(BenchRow {
                    algo: algo.name().to_string(),
                    loss: config.loss.name().to_string(),
                    p,
                    n,
                    repeat,
                    wall_ns,
                    comparisons,
                });
            }
        }
    }
    Ok(rows)
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2
    }
}

/// Groups rows by `(algo, loss, p, n)` in first-seen order.
pub fn summarize(rows: &[BenchRow]) -> Vec<BenchPoint> {
    let mut points: Vec<(BenchPoint, Vec<u64>)> = Vec::new();
    for row in rows {
        let key = |pt: &BenchPoint| pt.algo == row.algo && pt.loss == row.loss && pt.p == row.p && pt.n == row.n;
        match points.iter_mut().find(|(pt, _)| key(pt)) {
            Some((pt, walls)) => {
                walls.push(row.wall_ns);
                pt.comparisons = pt.comparisons.max(row.comparisons);
            }
            None => points.push((
                BenchPoint {
                    algo: row.algo.clone(),
                    loss: row.loss.clone(),
                    p: row.p,
                    n: row.n,
                    median_wall_ns: 0,
                    comparisons: row.comparisons,
                    comparisons_per_n: 0.0,
                },
                vec![row.wall_ns],
            )),
        }
    }
    points
        .into_iter()
        .map(|(mut pt, walls)| {
            pt.median_wall_ns = median(walls);
            pt.comparisons_per_n = pt.comparisons as f64 / pt.n as f64;
            pt
        })
        .collect()
}
