//! Loss-augmented inference for rank-based losses.
//!
//! Given positive and negative sample scores, finds the ranking that
//! maximizes `loss + discriminant` (the most violating ranking of a
//! structured hinge bound) for average precision and NDCG losses. The main
//! solver, [`inference::opt_ranks`], is a quicksort-flavored divide and
//! conquer over the unsorted negative scores that runs in
//! `O(|N| log |P|)` comparisons. A sort-based baseline and two brute-force
//! oracles are provided to check it.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! # Modules
//!
//! - [`loss`]: AP and NDCG losses, their per-negative decomposition and
//!   discrete derivatives.
//! - [`interleaving`]: interleaving rank vectors and `±` patterns.
//! - [`instance`]: scored inference problems.
//! - [`select`]: median / partition primitives with comparison counting.
//! - [`inference`]: the divide and conquer solver and the sort baseline.
//! - [`oracle`]: exhaustive solvers used as independent checks.
//! - [`learner`]: linear ranking models trained on the structured hinge bound.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod inference;
pub mod instance;
pub mod interleaving;
pub mod learner;
pub mod loss;
pub mod oracle;
pub mod select;

pub use error::{Error, Result};
pub use inference::{opt_ranks, sort_baseline, InferenceOptions, InferenceResult, SelectionMode};
pub use instance::{Scored, ScoredInstance};
pub use interleaving::{Class, InterleavingVector};
pub use loss::{Discount, LossContext, RankLoss};
