//! Median and partition primitives over negative scores.
//!
//! Everything here uses the descending convention: "smaller index" means
//! "higher score" under [`Scored::precedes`]. Every score comparison is
//! counted so the solvers can report how much work they did.
//!
//! Indices are 0-based and ranges are inclusive (`l..=r`).

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Scored;

/// How pivots are picked when selecting the median.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Median of three uniformly random candidates from a seeded generator.
    /// Expected linear time.
    Randomized { seed: u64 },
    /// Median of medians of groups of five. Worst-case linear time.
    MedianOfMedians,
}

impl Default for SelectionMode {
    fn default() -> Self {
        SelectionMode::Randomized { seed: 0 }
    }
}

#[allow(clippy::large_enum_variant)]
enum Pivoting {
    Random(ChaCha8Rng),
    MedianOfMedians,
}

/// Median/select engine with a comparison counter.
pub struct Selector {
    pivoting: Pivoting,
    comparisons: u64,
}

fn check_range(l: usize, r: usize, len: usize) -> Result<()> {
    if l > r || r >= len {
        return Err(Error::InvalidRange { lo: l, hi: r, len });
    }
    Ok(())
}

impl Selector {
    pub fn new(mode: SelectionMode) -> Self {
        let pivoting = match mode {
            SelectionMode::Randomized { seed } => Pivoting::Random(ChaCha8Rng::seed_from_u64(seed)),
            SelectionMode::MedianOfMedians => Pivoting::MedianOfMedians,
        };
        Self { pivoting, comparisons: 0 }
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    /// Index (into `a`) of the element of `a[l..=r]` that is the
    /// `ceil(len / 2)`-th highest. `a` is left untouched.
    pub fn median(&mut self, a: &[Scored], l: usize, r: usize) -> Result<usize> {
        check_range(l, r, a.len())?;
        let mut scratch: Vec<usize> = (l..=r).collect();
        let k = (scratch.len() - 1) / 2;
        let comparisons = &mut self.comparisons;
        let mut prec = |x: &usize, y: &usize| {
            *comparisons += 1;
            a[*x].precedes(&a[*y])
        };
        nth_by(&mut scratch, k, &mut self.pivoting, &mut prec);
        Ok(scratch[k])
    }

    /// Partitions `a[l..=r]` around the element currently at `m`: everything
    /// left of the returned index precedes it, everything right follows it.
    pub fn select(&mut self, a: &mut [Scored], m: usize, l: usize, r: usize) -> Result<usize> {
        check_range(l, r, a.len())?;
        if m < l || m > r {
            return Err(Error::OutOfRange { what: "pivot", value: m, lo: l, hi: r });
        }
        let comparisons = &mut self.comparisons;
        let mut prec = |x: &Scored, y: &Scored| {
            *comparisons += 1;
            x.precedes(y)
        };
        Ok(l + partition(&mut a[l..=r], m - l, &mut prec))
    }

    /// Median followed by select, fused into one in-place quickselect. On
    /// return the median of `a[l..=r]` sits at the returned index
    /// `l + ceil(len / 2) - 1` and the range is partitioned around it.
    pub fn place_median(&mut self, a: &mut [Scored], l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < a.len());
        let k = (r - l) / 2;
        let comparisons = &mut self.comparisons;
        let mut prec = |x: &Scored, y: &Scored| {
            *comparisons += 1;
            x.precedes(y)
        };
        nth_by(&mut a[l..=r], k, &mut self.pivoting, &mut prec);
        l + k
    }
}

/// See [`Selector::median`].
pub fn median(a: &[Scored], l: usize, r: usize, mode: SelectionMode, comparisons: &mut u64) -> Result<usize> {
    let mut sel = Selector::new(mode);
    let out = sel.median(a, l, r);
    *comparisons += sel.comparisons;
    out
}

/// See [`Selector::select`].
pub fn select(a: &mut [Scored], m: usize, l: usize, r: usize, comparisons: &mut u64) -> Result<usize> {
    let mut sel = Selector::new(SelectionMode::MedianOfMedians);
    let out = sel.select(a, m, l, r);
    *comparisons += sel.comparisons;
    out
}

/// Moves three random elements to the front of `a` and returns the index of
/// their median.
fn median_of_three_random<T, F: FnMut(&T, &T) -> bool>(a: &mut [T], rng: &mut ChaCha8Rng, prec: &mut F) -> usize {
    for t in 0..3 {
        let j = rng.random_range(t..a.len());
        a.swap(t, j);
    }
    let first_before_second = prec(&a[0], &a[1]);
    if first_before_second == prec(&a[1], &a[2]) {
        1
    } else if first_before_second == prec(&a[0], &a[2]) {
        2
    } else {
        0
    }
}

/// Lomuto partition around `a[pivot]`. Returns the pivot's final index.
fn partition<T, F: FnMut(&T, &T) -> bool>(a: &mut [T], pivot: usize, prec: &mut F) -> usize {
    let last = a.len() - 1;
    a.swap(pivot, last);
    let mut store = 0;
    for i in 0..last {
        if prec(&a[i], &a[last]) {
            a.swap(i, store);
            store += 1;
        }
    }
    a.swap(store, last);
    store
}

fn insertion_sort<T, F: FnMut(&T, &T) -> bool>(a: &mut [T], prec: &mut F) {
    for i in 1..a.len() {
        let mut j = i;
        while j > 0 && prec(&a[j], &a[j - 1]) {
            a.swap(j, j - 1);
            j -= 1;
        }
    }
}

/// Rearranges `a` so `a[k]` is the element of rank `k` (0-based) under
/// `prec`, with everything before it preceding and everything after it
/// following.
fn nth_by<T, F: FnMut(&T, &T) -> bool>(a: &mut [T], k: usize, pivoting: &mut Pivoting, prec: &mut F) {
    let (mut lo, mut hi) = (0, a.len());
    loop {
        let len = hi - lo;
        if len <= 5 {
            insertion_sort(&mut a[lo..hi], prec);
            return;
        }
        let window = &mut a[lo..hi];
        let pivot = match pivoting {
            Pivoting::Random(rng) => median_of_three_random(window, rng, prec),
            Pivoting::MedianOfMedians => median_of_medians(window, pivoting, prec),
        };
        let m = lo + partition(&mut a[lo..hi], pivot, prec);
        match k.cmp(&m) {
            core::cmp::Ordering::Equal => return,
            core::cmp::Ordering::Less => hi = m,
            core::cmp::Ordering::Greater => lo = m + 1,
        }
    }
}

/// Moves the median of each group of five to the front and selects their
/// median in place. Returns its index within `a`.
fn median_of_medians<T, F: FnMut(&T, &T) -> bool>(a: &mut [T], pivoting: &mut Pivoting, prec: &mut F) -> usize {
    let len = a.len();
    let groups = len.div_ceil(5);
    for g in 0..groups {
        let start = g * 5;
        let end = (start + 5).min(len);
        insertion_sort(&mut a[start..end], prec);
        a.swap(g, start + (end - start - 1) / 2);
    }
    let mid = (groups - 1) / 2;
    nth_by(&mut a[..groups], mid, pivoting, prec);
    mid
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest};

    fn tagged(xs: &[f64]) -> Vec<Scored> {
        xs.iter().enumerate().map(|(i, &s)| Scored::new(s, i)).collect()
    }

    fn is_partitioned(a: &[Scored], l: usize, r: usize, m: usize) -> bool {
        a[l..m].iter().all(|x| x.precedes(&a[m])) && a[m + 1..=r].iter().all(|x| a[m].precedes(x))
    }

    const MODES: [SelectionMode; 2] =
        [SelectionMode::Randomized { seed: 7 }, SelectionMode::MedianOfMedians];

    #[test]
    fn median_of_three() {
        // [a, b, 4.5, 6, 1, c]; median over positions 2..=4 is 4.5 at index 2.
        let a = tagged(&[9.0, 8.0, 4.5, 6.0, 1.0, 0.0]);
        for mode in MODES {
            let mut cmp = 0;
            assert_eq!(median(&a, 2, 4, mode, &mut cmp).unwrap(), 2);
            assert!(cmp > 0);
        }
    }

    #[test]
    fn select_around_median() {
        let mut a = tagged(&[9.0, 8.0, 4.5, 6.0, 1.0, 0.0]);
        let mut cmp = 0;
        let m = select(&mut a, 2, 2, 4, &mut cmp).unwrap();
        assert_eq!(m, 3);
        let scores: Vec<f64> = a.iter().map(|s| s.score).collect();
        assert_eq!(scores, vec![9.0, 8.0, 6.0, 4.5, 1.0, 0.0]);
    }

    #[test]
    fn single_element() {
        let mut a = tagged(&[3.0, 2.0, 1.0]);
        let mut cmp = 0;
        assert_eq!(median(&a, 1, 1, SelectionMode::MedianOfMedians, &mut cmp).unwrap(), 1);
        assert_eq!(select(&mut a, 1, 1, 1, &mut cmp).unwrap(), 1);
        assert_eq!(cmp, 0);
    }

    #[test]
    fn already_partitioned_is_stable() {
        let mut a = tagged(&[5.0, 7.0, 4.0, 1.0, 2.0]);
        let before = a.clone();
        let mut cmp = 0;
        assert_eq!(select(&mut a, 2, 0, 4, &mut cmp).unwrap(), 2);
        assert_eq!(a, before);
    }

    #[test]
    fn range_errors() {
        let mut a = tagged(&[1.0, 2.0]);
        let mut cmp = 0;
        assert!(median(&a, 1, 0, SelectionMode::MedianOfMedians, &mut cmp).is_err());
        assert!(median(&a, 0, 2, SelectionMode::MedianOfMedians, &mut cmp).is_err());
        assert!(select(&mut a, 1, 0, 0, &mut cmp).is_err());
    }

    #[test]
    fn median_of_101_matches_sort() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<f64> = (0..120).map(|_| rng.random_range(-1.0..1.0)).collect();
        let a = tagged(&xs);
        let (l, r) = (10, 110);
        let mut sorted = a[l..=r].to_vec();
        sorted.sort_by(Scored::cmp_desc);
        for mode in MODES {
            let mut cmp = 0;
            let m = median(&a, l, r, mode, &mut cmp).unwrap();
            assert_eq!(a[m], sorted[50]);
        }
    }

    #[test]
    fn place_median_with_ties() {
        let xs = [1.0, 1.0, 1.0, 0.0, 1.0, 2.0, 2.0, 0.0, 1.0];
        for mode in MODES {
            let mut a = tagged(&xs);
            let mut sorted = a.clone();
            sorted.sort_by(Scored::cmp_desc);
            let mut sel = Selector::new(mode);
            let m = sel.place_median(&mut a, 0, 8);
            assert_eq!(m, 4);
            assert_eq!(a[m], sorted[4]);
            assert!(is_partitioned(&a, 0, 8, m));
        }
    }

    proptest! {
        #[test]
        fn select_partitions(xs in prop::collection::vec(-5i32..5, 1..60), seed in 0u64..1000) {
            let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
            let len = xs.len();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = rng.random_range(0..len);
            let r = rng.random_range(l..len);
            let m = rng.random_range(l..=r);
            let mut a = tagged(&xs);
            let pivot = a[m];
            let mut cmp = 0;
            let idx = select(&mut a, m, l, r, &mut cmp).unwrap();
            prop_assert_eq!(a[idx], pivot);
            prop_assert!(is_partitioned(&a, l, r, idx));
            let mut before = tagged(&xs)[l..=r].to_vec();
            let mut after = a[l..=r].to_vec();
            before.sort_by(Scored::cmp_desc);
            after.sort_by(Scored::cmp_desc);
            prop_assert_eq!(before, after);
            prop_assert_eq!(&a[..l], &tagged(&xs)[..l]);
            prop_assert_eq!(&a[r + 1..], &tagged(&xs)[r + 1..]);
            let mut sorted = tagged(&xs)[l..=r].to_vec();
            sorted.sort_by(Scored::cmp_desc);
            prop_assert_eq!(sorted[idx - l], pivot);
        }

        #[test]
        fn place_median_matches_median_then_select(xs in prop::collection::vec(-50.0f64..50.0, 1..300), mom in any::<bool>()) {
            let mode = if mom { SelectionMode::MedianOfMedians } else { SelectionMode::Randomized { seed: 11 } };
            let a0 = tagged(&xs);
            let r = xs.len() - 1;
            let mut cmp = 0;
            let mut two_step = a0.clone();
            let m = median(&two_step, 0, r, mode, &mut cmp).unwrap();
            let m = select(&mut two_step, m, 0, r, &mut cmp).unwrap();
            let mut fused = a0.clone();
            let mut sel = Selector::new(mode);
            let f = sel.place_median(&mut fused, 0, r);
            prop_assert_eq!(m, f);
            prop_assert_eq!(two_step[m], fused[f]);
            prop_assert!(is_partitioned(&fused, 0, r, f));
        }
    }
}
