//! Seeded synthetic datasets.

use qsrank_core::learner::{Dataset, Label, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Two Gaussian classes whose means differ by `separation` along
/// [`signal_direction`].
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub n_pos: usize,
    pub n_neg: usize,
    pub d: usize,
    pub separation: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_pos == 0 || self.n_neg == 0 {
            return Err(Error::Invalid("synthetic data needs at least one sample per class".into()));
        }
        if self.d == 0 {
            return Err(Error::Invalid("synthetic data needs at least one feature".into()));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::Invalid("noise sigma must be finite and nonnegative".into()));
        }
        if !self.separation.is_finite() {
            return Err(Error::Invalid("separation must be finite".into()));
        }
        Ok(())
    }
}

/// Unit vector with equal weight on every coordinate.
pub fn signal_direction(d: usize) -> Vec<f64> {
    vec![1.0 / (d as f64).sqrt(); d]
}

fn noise(sigma: f64) -> Normal<f64> {
    Normal::new(0.0, sigma).expect("sigma validated")
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = noise(spec.noise_sigma);
    let dir = signal_direction(spec.d);
    let mut samples = Vec::with_capacity(spec.n_pos + spec.n_neg);
    for i in 0..spec.n_pos + spec.n_neg {
        let positive = i < spec.n_pos;
        let shift = if positive { spec.separation } else { 0.0 };
        let features = dir.iter().map(|u| shift * u + noise.sample(&mut rng)).collect();
        let (id, label) = if positive {
            (format!("p{i:05}"), Label::Positive)
        } else {
            (format!("n{:05}", i - spec.n_pos), Label::Negative)
        };
        samples.push(Sample { id, label, features });
    }
    Ok(Dataset::new(samples)?)
}

/// Axis-aligned Gaussian mixture component.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
}

impl Component {
    pub fn new(weight: f64, mean: &[f64], sd: &[f64]) -> Self {
        Self { weight, mean: mean.to_vec(), sd: sd.to_vec() }
    }
}

/// Class-conditional Gaussian mixtures.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    pub positives: Vec<Component>,
    pub negatives: Vec<Component>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub seed: u64,
}

fn check_mixture(comps: &[Component], d: usize) -> Result<()> {
    let total: f64 = comps.iter().map(|c| c.weight).sum();
    let ok = !comps.is_empty()
        && (total - 1.0).abs() < 1e-9
        && comps.iter().all(|c| {
            c.weight >= 0.0 && c.mean.len() == d && c.sd.len() == d && c.sd.iter().all(|s| *s >= 0.0 && s.is_finite())
        });
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid("mixture weights must sum to 1 and every component must share the dimension".into()))
    }
}

fn draw(rng: &mut ChaCha8Rng, comps: &[Component]) -> Vec<f64> {
    let z = noise(1.0);
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let last = comps.len() - 1;
    let comp = comps
        .iter()
        .enumerate()
        .find(|(k, c)| {
            acc += c.weight;
            u < acc || *k == last
        })
        .map(|(_, c)| c)
        .expect("nonempty mixture");
    comp.mean.iter().zip(&comp.sd).map(|(m, s)| m + s * z.sample(rng)).collect()
}

pub fn generate_mixture(spec: &MixtureSpec) -> Result<Dataset> {
    if spec.n_pos == 0 || spec.n_neg == 0 {
        return Err(Error::Invalid("synthetic data needs at least one sample per class".into()));
    }
    let d = spec.positives.first().map_or(0, |c| c.mean.len());
    if d == 0 {
        return Err(Error::Invalid("synthetic data needs at least one feature".into()));
    }
    check_mixture(&spec.positives, d)?;
    check_mixture(&spec.negatives, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut samples = Vec::with_capacity(spec.n_pos + spec.n_neg);
    for i in 0..spec.n_pos {
        let features = draw(&mut rng, &spec.positives);
        samples.push(Sample { id: format!("p{i:05}"), label: Label::Positive, features });
    }
    for i in 0..spec.n_neg {
        let features = draw(&mut rng, &spec.negatives);
        samples.push(Sample { id: format!("n{i:05}"), label: Label::Negative, features });
    }
    Ok(Dataset::new(samples)?)
}

/// Two-feature fixture with twenty negatives per positive and overlapping
/// classes. Most positives sit in a tight cluster that a minority of
/// negatives also occupies; the rest of the negatives form a bulk at the
/// origin and the remaining positives are diffuse. A classifier that
/// predicts every sample negative is already 95% accurate, so a per-sample
/// hinge has little incentive to order the positives well.
pub fn imbalanced_overlap(n_pos: usize, seed: u64) -> Result<Dataset> {
    generate_mixture(&MixtureSpec {
        positives: vec![Component::new(0.75, &[1.5, 3.0], &[1.0, 0.5]), Component::new(0.25, &[0.5, 1.5], &[2.0, 2.0])],
        negatives: vec![Component::new(0.9, &[0.0, 0.0], &[1.0, 1.0]), Component::new(0.1, &[2.5, 3.0], &[1.0, 2.0])],
        n_pos,
        n_neg: 20 * n_pos,
        seed,
    })
}

/// Uniform `[-1, 1)` scores for a pure inference problem.
pub fn uniform_scores(p: usize, n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
    let neg = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    (pos, neg)
}
