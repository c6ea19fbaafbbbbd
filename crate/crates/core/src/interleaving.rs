//! Interleaving rank vectors.
//!
//! The interleaving rank of a negative sample is one plus the number of
//! positives ranked above it. Listing those ranks for the negatives in
//! descending score order gives a nondecreasing vector with entries in
//! `1..=p+1`, which is in bijection with the `±` pattern of the ranking.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Positive,
    Negative,
}

impl Class {
    pub fn symbol(self) -> char {
        match self {
            Class::Positive => '+',
            Class::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterleavingVector {
    ranks: Vec<usize>,
    positives: usize,
}

/// Returns the first position `j` with `ranks[j] < ranks[j - 1]`, if any.
pub fn first_descent(ranks: &[usize]) -> Option<usize> {
    ranks.windows(2).position(|w| w[1] < w[0]).map(|j| j + 1)
}

impl InterleavingVector {
    pub fn new(ranks: Vec<usize>, positives: usize) -> Result<Self> {
        if positives == 0 || ranks.is_empty() {
            return Err(Error::EmptyClass { positives, negatives: ranks.len() });
        }
        if let Some(&bad) = ranks.iter().find(|&&r| r == 0 || r > positives + 1) {
            return Err(Error::OutOfRange {
                what: "interleaving rank",
                value: bad,
                lo: 1,
                hi: positives + 1,
            });
        }
        if let Some(position) = first_descent(&ranks) {
            return Err(Error::NotMonotone { position });
        }
        Ok(Self { ranks, positives })
    }

    /// Every negative below every positive.
    pub fn ground_truth(positives: usize, negatives: usize) -> Self {
        Self { ranks: vec![positives + 1; negatives], positives }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn into_ranks(self) -> Vec<usize> {
        self.ranks
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    pub fn negatives(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_ground_truth(&self) -> bool {
        self.ranks.iter().all(|&r| r == self.positives + 1)
    }

    /// `out[i]` is the number of negatives with interleaving rank `<= i + 1`,
    /// i.e. the number of negatives ranked above the `(i + 1)`-th positive.
    fn negatives_above_positive(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.positives + 1];
        for &r in &self.ranks {
            counts[r - 1] += 1;
        }
        let mut acc = 0;
        counts
            .iter()
            .take(self.positives)
            .map(|&c| {
                acc += c;
                acc
            })
            .collect()
    }

    /// Interleaving rank of each positive (one plus the number of negatives
    /// above it), positives in descending score order.
    pub fn positive_ranks(&self) -> Vec<usize> {
        self.negatives_above_positive().into_iter().map(|c| c + 1).collect()
    }

    /// 1-based position of each positive in the full ranking.
    pub fn positive_positions(&self) -> Vec<usize> {
        self.negatives_above_positive()
            .into_iter()
            .enumerate()
            .map(|(k, c)| k + 1 + c)
            .collect()
    }

    /// 1-based position of each negative in the full ranking.
    pub fn negative_positions(&self) -> Vec<usize> {
        self.ranks.iter().enumerate().map(|(j, &r)| j + r).collect()
    }

    pub fn from_pattern(pattern: &[Class]) -> Result<Self> {
        let mut seen = 0;
        let mut ranks = Vec::new();
        for c in pattern {
            match c {
                Class::Positive => seen += 1,
                Class::Negative => ranks.push(seen + 1),
            }
        }
        if seen == 0 || ranks.is_empty() {
            return Err(Error::MalformedPattern { positives: seen, negatives: ranks.len() });
        }
        Ok(Self { ranks, positives: seen })
    }

    /// Like [`from_pattern`](Self::from_pattern) but also checks the class
    /// counts against an instance.
    pub fn from_pattern_sized(pattern: &[Class], positives: usize, negatives: usize) -> Result<Self> {
        let pos = pattern.iter().filter(|&&c| c == Class::Positive).count();
        let neg = pattern.len() - pos;
        if pos != positives || neg != negatives {
            return Err(Error::MalformedPattern { positives: pos, negatives: neg });
        }
        Self::from_pattern(pattern)
    }

    pub fn to_pattern(&self) -> Vec<Class> {
        let mut out = Vec::with_capacity(self.positives + self.ranks.len());
        let mut placed = 0;
        for &r in &self.ranks {
            while placed + 1 < r {
                out.push(Class::Positive);
                placed += 1;
            }
            out.push(Class::Negative);
        }
        out.extend(core::iter::repeat_n(Class::Positive, self.positives - placed));
        out
    }

    pub fn pattern_string(&self) -> String {
        self.to_pattern().into_iter().map(Class::symbol).collect()
    }

    /// Parses a pattern written with `+` and `-`.
    pub fn parse_pattern(s: &str) -> Result<Self> {
        let mut pattern = Vec::with_capacity(s.len());
        for (idx, ch) in s.chars().enumerate() {
            pattern.push(match ch {
                '+' => Class::Positive,
                '-' | '\u{2212}' => Class::Negative,
                _ => return Err(Error::OutOfRange { what: "pattern symbol", value: idx, lo: 0, hi: 0 }),
            });
        }
        Self::from_pattern(&pattern)
    }
}
