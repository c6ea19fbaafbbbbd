//! Independent reference implementations used by the integration tests.
//! Nothing here goes through the interleaving-vector code paths.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `true` marks a positive. Positions are 1-based in the formulas.
pub fn direct_ap(pattern: &[bool]) -> f64 {
    let p = pattern.iter().filter(|&&b| b).count() as f64;
    let mut seen = 0.0;
    let mut sum = 0.0;
    for (idx, &is_pos) in pattern.iter().enumerate() {
        if is_pos {
            seen += 1.0;
            sum += seen / (idx + 1) as f64;
        }
    }
    1.0 - sum / p
}

pub fn log_discount(i: usize) -> f64 {
    1.0 / (1.0 + i as f64).log2()
}

pub fn chakrabarti_discount(i: usize) -> f64 {
    if i <= 2 {
        1.0
    } else {
        1.0 / (i as f64).log2()
    }
}

pub fn direct_ndcg(pattern: &[bool], d: fn(usize) -> f64) -> f64 {
    let p = pattern.iter().filter(|&&b| b).count();
    let gain: f64 = pattern.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| d(i + 1)).sum();
    let ideal: f64 = (1..=p).map(d).sum();
    1.0 - gain / ideal
}

/// Class pattern induced by interleaving ranks (entry j: positives above
/// the j-th negative, plus one).
pub fn pattern_from_ranks(ranks: &[usize], p: usize) -> Vec<bool> {
    let mut out = Vec::new();
    let mut placed = 0;
    for &r in ranks {
        while placed < r - 1 {
            out.push(true);
            placed += 1;
        }
        out.push(false);
    }
    while placed < p {
        out.push(true);
        placed += 1;
    }
    out
}

/// Raw pairwise discriminant for the ordering that lays out sorted
/// positives and sorted negatives according to `pattern`.
pub fn pairwise_f(pos_desc: &[f64], neg_desc: &[f64], pattern: &[bool]) -> f64 {
    let mut pos_at = Vec::new();
    let mut neg_at = Vec::new();
    for (idx, &b) in pattern.iter().enumerate() {
        if b {
            pos_at.push(idx);
        } else {
            neg_at.push(idx);
        }
    }
    let mut total = 0.0;
    for (x, &px) in pos_at.iter().enumerate() {
        for (y, &py) in neg_at.iter().enumerate() {
            let sign = if px < py { 1.0 } else { -1.0 };
            total += sign * (pos_desc[x] - neg_desc[y]);
        }
    }
    total / (pos_desc.len() * neg_desc.len()) as f64
}

pub fn sorted_desc(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn uniform_scores(rng: &mut StdRng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Random class sizes in `1..=max_p`, `1..=max_n` and U[-1, 1] scores.
pub fn random_instance(rng: &mut StdRng, max_p: usize, max_n: usize) -> (Vec<f64>, Vec<f64>) {
    let p = rng.random_range(1..=max_p);
    let n = rng.random_range(1..=max_n);
    (uniform_scores(rng, p), uniform_scores(rng, n))
}

/// Every nondecreasing vector of length `n` with entries in `1..=p+1`.
pub fn all_monotone(p: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(p: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in lo..=p + 1 {
            cur.push(r);
            rec(p, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, n, 1, &mut Vec::new(), &mut out);
    out
}
