use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A score tagged with the identifier of the sample it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scored {
    pub score: f64,
    pub id: usize,
}

impl Scored {
    pub fn new(score: f64, id: usize) -> Self {
        Self { score, id }
    }

    /// Strict total order used everywhere: higher score first, ties broken
    /// by the smaller id.
    #[inline]
    pub fn precedes(&self, other: &Scored) -> bool {
        self.score > other.score || (self.score == other.score && self.id < other.id)
    }

    #[inline]
    pub fn cmp_desc(&self, other: &Scored) -> core::cmp::Ordering {
        other
            .score
            .total_cmp(&self.score)
            .then_with(|| self.id.cmp(&other.id))
    }
}

/// One loss-augmented inference problem.
///
/// Positives are kept sorted in descending order. Negatives are stored in
/// whatever order the caller or the last solver left them; solvers rearrange
/// them in place.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredInstance {
    pos_scores: Vec<f64>,
    pos_ids: Vec<usize>,
    negatives: Vec<Scored>,
}

fn check_finite(items: &[Scored]) -> Result<()> {
    match items.iter().position(|s| !s.score.is_finite()) {
        Some(index) => Err(Error::NonFiniteScore { index }),
        None => Ok(()),
    }
}

impl ScoredInstance {
    /// Builds an instance from scored samples. Positives are sorted by
    /// descending score with ties kept in id order.
    pub fn new(mut positives: Vec<Scored>, negatives: Vec<Scored>) -> Result<Self> {
        if positives.is_empty() || negatives.is_empty() {
            return Err(Error::EmptyClass { positives: positives.len(), negatives: negatives.len() });
        }
        check_finite(&positives)?;
        check_finite(&negatives)?;
        positives.sort_by(Scored::cmp_desc);
        let (pos_scores, pos_ids) = positives.iter().map(|s| (s.score, s.id)).unzip();
        Ok(Self { pos_scores, pos_ids, negatives })
    }

    /// Builds an instance from raw scores; ids are the indices within each
    /// class.
    pub fn from_scores(positives: &[f64], negatives: &[f64]) -> Result<Self> {
        let tag = |xs: &[f64]| xs.iter().enumerate().map(|(i, &s)| Scored::new(s, i)).collect();
        Self::new(tag(positives), tag(negatives))
    }

    pub fn positives(&self) -> usize {
        self.pos_scores.len()
    }

    pub fn negatives(&self) -> usize {
        self.negatives.len()
    }

    /// Positive scores, descending.
    pub fn pos_scores(&self) -> &[f64] {
        &self.pos_scores
    }

    /// Ids of the positives, in the order of [`pos_scores`](Self::pos_scores).
    pub fn pos_ids(&self) -> &[usize] {
        &self.pos_ids
    }

    /// Negatives in their current arrangement.
    pub fn neg(&self) -> &[Scored] {
        &self.negatives
    }

    pub(crate) fn neg_mut(&mut self) -> &mut [Scored] {
        &mut self.negatives
    }

    /// Negatives sorted by descending score (ties by id), without touching
    /// the stored arrangement.
    pub fn sorted_negatives(&self) -> Vec<Scored> {
        let mut out = self.negatives.clone();
        out.sort_by(Scored::cmp_desc);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn positives_sorted_descending() {
        let inst = ScoredInstance::from_scores(&[1.0, 3.0], &[2.0]).unwrap();
        assert_eq!(inst.pos_scores(), &[3.0, 1.0]);
        assert_eq!(inst.pos_ids(), &[1, 0]);
        assert_eq!(inst.neg(), &[Scored::new(2.0, 0)]);
    }

    #[test]
    fn ties_keep_original_order() {
        let inst = ScoredInstance::from_scores(&[2.0, 2.0, 5.0], &[0.0]).unwrap();
        assert_eq!(inst.pos_ids(), &[2, 0, 1]);
    }

    #[test]
    fn negatives_kept_unsorted() {
        let inst = ScoredInstance::from_scores(&[0.0], &[1.0, 3.0, 2.0]).unwrap();
        let scores: Vec<f64> = inst.neg().iter().map(|s| s.score).collect();
        assert_eq!(scores, vec![1.0, 3.0, 2.0]);
        let sorted: Vec<usize> = inst.sorted_negatives().iter().map(|s| s.id).collect();
        assert_eq!(sorted, vec![1, 2, 0]);
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(matches!(
            ScoredInstance::from_scores(&[], &[1.0]),
            Err(Error::EmptyClass { positives: 0, negatives: 1 })
        ));
        assert!(ScoredInstance::from_scores(&[1.0], &[]).is_err());
        assert!(matches!(
            ScoredInstance::from_scores(&[1.0], &[f64::NAN]),
            Err(Error::NonFiniteScore { index: 0 })
        ));
    }

    #[test]
    fn precedes_is_strict() {
        let a = Scored::new(1.0, 0);
        let b = Scored::new(1.0, 1);
        assert!(a.precedes(&b));
        assert!(!b.precedes(&a));
        assert!(!a.precedes(&a));
    }
}
