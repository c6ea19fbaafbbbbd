//! Linear ranking models trained by subgradient descent on the structured
//! hinge bound
//!
//! ```text
//! J(w) = max_R [ loss(R*, R) + F(X, R; w) ] - F(X, R*; w)
//! ```
//!
//! The inner maximization is [`opt_ranks`]; the subgradient is
//! `grad F(R_bar) - grad F(R*)`, which for a linear score `phi(x) = <w, x>`
//! is a coefficient-weighted sum of feature vectors.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::inference::{coefficients, ground_truth_discriminant, opt_ranks, InferenceOptions, SelectionMode};
use crate::instance::{Scored, ScoredInstance};
use crate::interleaving::{Class, InterleavingVector};
use crate::loss::{loss_value, Discount, LossContext, RankLoss};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: String,
    pub label: Label,
    pub features: Vec<f64>,
}

/// Labeled feature vectors with a fixed dimension and at least one sample
/// of each class.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    samples: Vec<Sample>,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let dim = samples.first().map_or(0, |s| s.features.len());
        let mut ids = BTreeSet::new();
        for (index, s) in samples.iter().enumerate() {
            if s.features.len() != dim {
                return Err(Error::DimensionMismatch { what: "feature count", expected: dim, found: s.features.len() });
            }
            if s.features.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteScore { index });
            }
            if !ids.insert(s.id.as_str()) {
                return Err(Error::DuplicateId { index });
            }
        }
        let positives = samples.iter().filter(|s| s.label == Label::Positive).count();
        if positives == 0 || positives == samples.len() {
            return Err(Error::EmptyClass { positives, negatives: samples.len() - positives });
        }
        Ok(Self { dim, samples })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positives(&self) -> usize {
        self.samples.iter().filter(|s| s.label == Label::Positive).count()
    }

    /// Copy with an extra constant feature appended to every sample (an
    /// intercept for classifiers; ranking objectives ignore it).
    pub fn with_constant_feature(&self, value: f64) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let mut features = s.features.clone();
                features.push(value);
                Sample { id: s.id.clone(), label: s.label, features }
            })
            .collect();
        Self { dim: self.dim + 1, samples }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearModel {
    pub fn zeros(dim: usize) -> Self {
        Self { weights: vec![0.0; dim] }
    }

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteScore { index });
        }
        Ok(Self { weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn score(&self, features: &[f64]) -> f64 {
        dot(&self.weights, features)
    }

    fn check(&self, data: &Dataset) -> Result<()> {
        if self.dim() != data.dim() {
            return Err(Error::DimensionMismatch { what: "model dimension", expected: data.dim(), found: self.dim() });
        }
        Ok(())
    }
}

/// Which surrogate a model is trained on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrainObjective {
    Rank(RankLoss),
    /// Per-sample binary hinge loss.
    ZeroOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepDecay {
    /// `rate / sqrt(t)`.
    InvSqrt,
    Constant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub objective: TrainObjective,
    pub epochs: usize,
    pub learning_rate: f64,
    pub decay: StepDecay,
    pub l2_lambda: f64,
    /// Seeds the pivot generator used by inference.
    pub seed: u64,
    /// Compare the subgradient with central finite differences every epoch.
    pub fd_check: bool,
}

impl TrainConfig {
    pub fn new(objective: TrainObjective) -> Self {
        Self {
            objective,
            epochs: 100,
            learning_rate: 1.0,
            decay: StepDecay::InvSqrt,
            l2_lambda: 0.0,
            seed: 0,
            fd_check: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig("learning rate must be positive"));
        }
        if !(self.l2_lambda >= 0.0 && self.l2_lambda.is_finite()) {
            return Err(Error::InvalidConfig("l2 lambda must be nonnegative"));
        }
        if let TrainObjective::Rank(loss) = self.objective {
            if !loss.is_qs_suitable() {
                return Err(Error::UnsuitableLoss);
            }
        }
        Ok(())
    }

    fn rate(&self, epoch: usize) -> f64 {
        match self.decay {
            StepDecay::InvSqrt => self.learning_rate / libm::sqrt(epoch as f64),
            StepDecay::Constant => self.learning_rate,
        }
    }
}

/// Scores every sample; sample ids are their indices in the dataset.
pub fn score_dataset(model: &LinearModel, data: &Dataset) -> Result<ScoredInstance> {
    model.check(data)?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, s) in data.samples().iter().enumerate() {
        let scored = Scored::new(model.score(&s.features), i);
        match s.label {
            Label::Positive => pos.push(scored),
            Label::Negative => neg.push(scored),
        }
    }
    ScoredInstance::new(pos, neg)
}

/// Sample indices by descending score, ties by ascending sample id.
pub fn predict_ranking(model: &LinearModel, data: &Dataset) -> Result<Vec<usize>> {
    model.check(data)?;
    let samples = data.samples();
    let scores: Vec<f64> = samples.iter().map(|s| model.score(&s.features)).collect();
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then_with(|| samples[a].id.cmp(&samples[b].id)));
    Ok(order)
}

fn predicted_interleaving(model: &LinearModel, data: &Dataset) -> Result<InterleavingVector> {
    let pattern: Vec<Class> = predict_ranking(model, data)?
        .into_iter()
        .map(|i| match data.samples()[i].label {
            Label::Positive => Class::Positive,
            Label::Negative => Class::Negative,
        })
        .collect();
    InterleavingVector::from_pattern(&pattern)
}

/// Loss of the ranking the model predicts.
pub fn prediction_loss(model: &LinearModel, data: &Dataset, loss: &RankLoss) -> Result<f64> {
    let iv = predicted_interleaving(model, data)?;
    let ctx = LossContext::new(loss, iv.positives(), iv.negatives())?;
    loss_value(loss, &iv, &ctx)
}

/// `1 - loss` of the predicted ranking: average precision for
/// [`RankLoss::Ap`], NDCG for [`RankLoss::Ndcg`].
pub fn eval_metric(model: &LinearModel, data: &Dataset, metric: &RankLoss) -> Result<f64> {
    Ok(1.0 - prediction_loss(model, data, metric)?)
}

/// Hinge value and subgradient at `model`.
#[derive(Debug, Clone, PartialEq)]
pub struct HingePoint {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub most_violating: InterleavingVector,
}

pub fn hinge_point(model: &LinearModel, data: &Dataset, loss: &RankLoss, opts: &InferenceOptions) -> Result<HingePoint> {
    let mut inst = score_dataset(model, data)?;
    let ctx = LossContext::new(loss, inst.positives(), inst.negatives())?;
    let res = opt_ranks(&mut inst, loss, &ctx, opts)?;
    let value = res.objective - ground_truth_discriminant(&inst);

    let p = inst.positives() as f64;
    let n = inst.negatives() as f64;
    let (cp, cn) = coefficients(&res.opt);
    let mut gradient = vec![0.0; data.dim()];
    let mut accumulate = |id: usize, coeff: f64| {
        if coeff != 0.0 {
            for (g, x) in gradient.iter_mut().zip(&data.samples()[id].features) {
                *g += coeff * x;
            }
        }
    };
    for (c, &id) in cp.iter().zip(inst.pos_ids()) {
        accumulate(id, c - 1.0 / p);
    }
    for (c, s) in cn.iter().zip(inst.neg()) {
        accumulate(s.id, c + 1.0 / n);
    }
    Ok(HingePoint { value, gradient, most_violating: res.opt })
}

/// Structured hinge bound `J(w)`.
pub fn hinge_objective(model: &LinearModel, data: &Dataset, loss: &RankLoss, opts: &InferenceOptions) -> Result<f64> {
    Ok(hinge_point(model, data, loss, opts)?.value)
}

/// Subgradient of `J(w)` at `model`.
pub fn semi_gradient(model: &LinearModel, data: &Dataset, loss: &RankLoss, opts: &InferenceOptions) -> Result<Vec<f64>> {
    Ok(hinge_point(model, data, loss, opts)?.gradient)
}

/// Mean per-sample hinge `max(0, 1 - y <w, x>)`.
pub fn zero_one_hinge(model: &LinearModel, data: &Dataset) -> Result<f64> {
    model.check(data)?;
    let total: f64 =
        data.samples().iter().map(|s| (1.0 - s.label.sign() * model.score(&s.features)).max(0.0)).sum();
    Ok(total / data.len() as f64)
}

/// Subgradient of [`zero_one_hinge`]; samples exactly on the margin
/// contribute nothing.
pub fn zero_one_subgradient(model: &LinearModel, data: &Dataset) -> Result<Vec<f64>> {
    model.check(data)?;
    let mut g = vec![0.0; data.dim()];
    let scale = 1.0 / data.len() as f64;
    for s in data.samples() {
        let y = s.label.sign();
        if y * model.score(&s.features) < 1.0 {
            for (gk, x) in g.iter_mut().zip(&s.features) {
                *gk -= scale * y * x;
            }
        }
    }
    Ok(g)
}

/// Per-epoch training record. `hinge` is the unregularized surrogate at the
/// start of the epoch, `objective` adds `lambda/2 |w|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub hinge: f64,
    pub objective: f64,
    /// Largest relative gap between the subgradient and central finite
    /// differences, when requested.
    pub fd_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub model: LinearModel,
    pub log: Vec<EpochRecord>,
}

fn surrogate(model: &LinearModel, data: &Dataset, config: &TrainConfig) -> Result<(f64, Vec<f64>)> {
    match config.objective {
        TrainObjective::Rank(loss) => {
            let opts = InferenceOptions { selection: SelectionMode::Randomized { seed: config.seed }, allow_unsuitable: false };
            let point = hinge_point(model, data, &loss, &opts)?;
            Ok((point.value, point.gradient))
        }
        TrainObjective::ZeroOne => Ok((zero_one_hinge(model, data)?, zero_one_subgradient(model, data)?)),
    }
}

/// Largest relative difference between `grad` and central differences of
/// the surrogate with step `h`.
pub fn finite_difference_error(model: &LinearModel, data: &Dataset, config: &TrainConfig, grad: &[f64], h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut probe = model.clone();
    for (k, &g) in grad.iter().enumerate().take(model.dim()) {
        probe.weights[k] = model.weights[k] + h;
        let (up, _) = surrogate(&probe, data, config)?;
        probe.weights[k] = model.weights[k] - h;
        let (down, _) = surrogate(&probe, data, config)?;
        probe.weights[k] = model.weights[k];
        let fd = (up - down) / (2.0 * h);
        let scale = fd.abs().max(g.abs()).max(1e-12);
        worst = worst.max((fd - g).abs() / scale);
    }
    Ok(worst)
}

fn descend(data: &Dataset, config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    let mut model = LinearModel::zeros(data.dim());
    let mut log = Vec::with_capacity(config.epochs);
    let mut initial = None;
    for epoch in 1..=config.epochs {
        let (hinge, grad) = surrogate(&model, data, config)?;
        let norm2: f64 = model.weights.iter().map(|w| w * w).sum();
        let objective = hinge + 0.5 * config.l2_lambda * norm2;
        let start = *initial.get_or_insert(objective);
        if start > 0.0 && objective > 10.0 * start || !objective.is_finite() {
            return Err(Error::Diverged { epoch, objective, initial: start });
        }
        let fd_error = if config.fd_check {
            Some(finite_difference_error(&model, data, config, &grad, 1e-6)?)
        } else {
            None
        };
        log.push(EpochRecord { epoch, hinge, objective, fd_error });
        let rate = config.rate(epoch);
        for (w, g) in model.weights.iter_mut().zip(&grad) {
            *w -= rate * (g + config.l2_lambda * *w);
        }
    }
    Ok(TrainOutcome { model, log })
}

/// Full-batch subgradient descent on the structured hinge bound, from
/// `w = 0`. `config.objective` must be a rank loss.
pub fn train(data: &Dataset, config: &TrainConfig) -> Result<TrainOutcome> {
    if config.objective == TrainObjective::ZeroOne {
        return Err(Error::InvalidConfig("use train_zero_one for the per-sample hinge"));
    }
    descend(data, config)
}

/// Binary SVM baseline: full-batch subgradient descent on the mean
/// per-sample hinge, from `w = 0`.
pub fn train_zero_one(data: &Dataset, config: &TrainConfig) -> Result<TrainOutcome> {
    let config = TrainConfig { objective: TrainObjective::ZeroOne, ..config.clone() };
    descend(data, &config)
}

/// Trains with whatever `config.objective` says.
pub fn fit(data: &Dataset, config: &TrainConfig) -> Result<TrainOutcome> {
    descend(data, config)
}

/// NDCG with the standard logarithmic discount.
pub const NDCG: RankLoss = RankLoss::Ndcg(Discount::LogConvex);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sample(id: &str, label: Label, features: &[f64]) -> Sample {
        Sample { id: id.to_string(), label, features: features.to_vec() }
    }

    fn pair() -> Dataset {
        Dataset::new(vec![sample("p", Label::Positive, &[1.0, 0.0]), sample("n", Label::Negative, &[0.0, 1.0])]).unwrap()
    }

    #[test]
    fn dataset_validation() {
        assert!(matches!(
            Dataset::new(vec![sample("a", Label::Positive, &[1.0])]),
            Err(Error::EmptyClass { .. })
        ));
        assert!(matches!(
            Dataset::new(vec![sample("a", Label::Positive, &[1.0]), sample("a", Label::Negative, &[1.0])]),
            Err(Error::DuplicateId { index: 1 })
        ));
        assert!(matches!(
            Dataset::new(vec![sample("a", Label::Positive, &[1.0]), sample("b", Label::Negative, &[1.0, 2.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        let d = pair().with_constant_feature(1.0);
        assert_eq!(d.dim(), 3);
        assert_eq!(d.samples()[1].features, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_weights_tie_by_id() {
        let data = pair();
        let inst = score_dataset(&LinearModel::zeros(2), &data).unwrap();
        assert_eq!(inst.pos_scores(), &[0.0]);
        // "n" sorts before "p".
        assert_eq!(predict_ranking(&LinearModel::zeros(2), &data).unwrap(), vec![1, 0]);
        assert_eq!(eval_metric(&LinearModel::zeros(2), &data, &RankLoss::Ap).unwrap(), 0.5);
    }

    #[test]
    fn unit_axes_score_as_weights() {
        let data = pair();
        let model = LinearModel::new(vec![2.5, -1.5]).unwrap();
        let inst = score_dataset(&model, &data).unwrap();
        assert_eq!(inst.pos_scores(), &[2.5]);
        assert_eq!(inst.neg()[0].score, -1.5);
        assert!(score_dataset(&LinearModel::zeros(3), &data).is_err());
    }

    #[test]
    fn predict_three_rows() {
        let data = Dataset::new(vec![
            sample("a", Label::Positive, &[2.0]),
            sample("b", Label::Negative, &[1.0]),
            sample("c", Label::Negative, &[3.0]),
        ])
        .unwrap();
        assert_eq!(predict_ranking(&LinearModel::new(vec![1.0]).unwrap(), &data).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn hinge_at_zero_is_max_loss() {
        let opts = InferenceOptions::default();
        let j = hinge_objective(&LinearModel::zeros(2), &pair(), &RankLoss::Ap, &opts).unwrap();
        assert!((j - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hinge_with_large_margin_is_zero() {
        let opts = InferenceOptions::default();
        let model = LinearModel::new(vec![10.0, -10.0]).unwrap();
        let point = hinge_point(&model, &pair(), &RankLoss::Ap, &opts).unwrap();
        assert_eq!(point.value, 0.0);
        assert!(point.most_violating.is_ground_truth());
        assert_eq!(point.gradient, vec![0.0, 0.0]);
    }

    #[test]
    fn reversed_pair_gradient() {
        // R_bar flips the pair: gradient = 2 psi(neg) - 2 psi(pos).
        let opts = InferenceOptions::default();
        let model = LinearModel::new(vec![-1.0, 1.0]).unwrap();
        let g = semi_gradient(&model, &pair(), &RankLoss::Ap, &opts).unwrap();
        assert_eq!(g, vec![-2.0, 2.0]);
    }

    #[test]
    fn inverted_model_metric() {
        let model = LinearModel::new(vec![-1.0, 1.0]).unwrap();
        assert!((eval_metric(&model, &pair(), &RankLoss::Ap).unwrap() - 0.5).abs() < 1e-15);
        let model = LinearModel::new(vec![1.0, -1.0]).unwrap();
        assert_eq!(eval_metric(&model, &pair(), &RankLoss::Ap).unwrap(), 1.0);
        assert_eq!(eval_metric(&model, &pair(), &NDCG).unwrap(), 1.0);
    }

    #[test]
    fn zero_one_pieces() {
        let data = pair();
        let model = LinearModel::zeros(2);
        assert_eq!(zero_one_hinge(&model, &data).unwrap(), 1.0);
        assert_eq!(zero_one_subgradient(&model, &data).unwrap(), vec![-0.5, 0.5]);
    }

    #[test]
    fn config_validation() {
        let mut c = TrainConfig::new(TrainObjective::Rank(RankLoss::Ap));
        assert!(c.validate().is_ok());
        c.epochs = 0;
        assert!(c.validate().is_err());
        let mut c = TrainConfig::new(TrainObjective::Rank(RankLoss::Ap));
        c.learning_rate = 0.0;
        assert!(c.validate().is_err());
        let c = TrainConfig::new(TrainObjective::Rank(RankLoss::Ndcg(Discount::ChakrabartiNonConvex)));
        assert_eq!(c.validate(), Err(Error::UnsuitableLoss));
        let c = TrainConfig::new(TrainObjective::ZeroOne);
        assert!(train(&pair(), &c).is_err());
    }

    #[test]
    fn divergence_detected() {
        let data = pair();
        let mut c = TrainConfig::new(TrainObjective::ZeroOne);
        c.l2_lambda = 10.0;
        c.learning_rate = 10.0;
        c.decay = StepDecay::Constant;
        assert!(matches!(train_zero_one(&data, &c), Err(Error::Diverged { .. })));
    }
}
