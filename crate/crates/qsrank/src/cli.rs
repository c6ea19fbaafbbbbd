//! Command-line interface. Every command writes a JSON report; `run`
//! returns the process exit status.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsrank_core::inference::{objective_value, opt_ranks_checked};
use qsrank_core::learner::{eval_metric, fit, hinge_objective, zero_one_hinge, LinearModel, StepDecay, TrainConfig, TrainObjective};
use qsrank_core::oracle::brute_force_pattern;
use qsrank_core::{
    opt_ranks, sort_baseline, Discount, InferenceOptions, InferenceResult, InterleavingVector, LossContext, RankLoss,
    Scored, ScoredInstance, SelectionMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bench::{self, Algo, BenchConfig, Sweep};
use crate::error::{Error, Result};
use crate::io::{self, ModelDocument, ScoreFile};
use crate::synthetic::{self, SyntheticSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "qsrank", version, about = "Loss-augmented inference and training for AP and NDCG ranking losses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the most violating ranking for a score file.
    Infer(InferArgs),
    /// Cross-check the solvers against exhaustive search on random instances.
    OracleCheck(OracleArgs),
    /// Time the solvers and count comparisons.
    Bench(BenchArgs),
    /// Train a linear model on a feature file.
    Train(TrainArgs),
    /// Score a feature file with a trained model.
    Eval(EvalArgs),
    /// Write a synthetic score or feature file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossArg {
    Ap,
    Ndcg,
    NdcgNonconvex,
}

impl LossArg {
    fn loss(self) -> RankLoss {
        match self {
            LossArg::Ap => RankLoss::Ap,
            LossArg::Ndcg => RankLoss::Ndcg(Discount::LogConvex),
            LossArg::NdcgNonconvex => RankLoss::Ndcg(Discount::ChakrabartiNonConvex),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Qs,
    Sort,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PivotArg {
    Random,
    Mom,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[arg(long, value_enum, default_value = "ap")]
    pub loss: LossArg,
    /// Score file with header `id,label,score`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "qs")]
    pub algo: AlgoArg,
    #[arg(long, value_enum, default_value = "random")]
    pub pivot: PivotArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check that the final arrangement of negatives is consistent with the
    /// returned ranks.
    #[arg(long)]
    pub verify_median: bool,
    /// Run the divide and conquer solver on a loss it is not exact for.
    #[arg(long = "unsafe")]
    pub allow_unsafe: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 5)]
    pub max_p: usize,
    #[arg(long, default_value_t = 9)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Losses to check; the nonconvex NDCG reports greedy failures instead
    /// of treating them as mismatches.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["ap", "ndcg"])]
    pub loss: Vec<LossArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "ap")]
    pub loss: LossArg,
    /// Preset grid: total, negatives or positives. Overridden by the lists.
    #[arg(long, default_value = "negatives")]
    pub sweep: String,
    #[arg(long, value_delimiter = ',')]
    pub p_list: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values = ["qs", "sort"])]
    pub algo_list: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV report with one row per run.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrainLossArg {
    Ap,
    Ndcg,
    ZeroOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecayArg {
    InvSqrt,
    Constant,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, value_enum)]
    pub loss: TrainLossArg,
    /// Feature file with header `id,label,f1,...,fd`.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1.0)]
    pub lr: f64,
    #[arg(long, value_enum, default_value = "inv-sqrt")]
    pub decay: DecayArg,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Append a constant feature so the model learns a bias.
    #[arg(long)]
    pub intercept: bool,
    /// Compare the subgradient with finite differences every epoch.
    #[arg(long)]
    pub fd_check: bool,
    /// Model document to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the training report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Ap,
    Ndcg,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value = "ap")]
    pub metric: MetricArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    /// Uniform scores in [-1, 1).
    Scores,
    /// Two Gaussian classes separated along the all-ones direction.
    Features,
    /// Two features, twenty negatives per positive, overlapping classes.
    Imbalanced,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value = "features")]
    pub kind: GenerateKind,
    #[arg(long, default_value_t = 20)]
    pub n_pos: usize,
    #[arg(long, default_value_t = 200)]
    pub n_neg: usize,
    #[arg(long, default_value_t = 5)]
    pub dim: usize,
    #[arg(long, default_value_t = 2.0)]
    pub separation: f64,
    #[arg(long, default_value_t = 1.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` and runs the command. Parse failures exit with status 1;
/// `--help` and `--version` exit with 0.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Infer(a) => infer(a, stdout),
        Command::OracleCheck(a) => oracle_check(a, stdout),
        Command::Bench(a) => bench_cmd(a, stdout),
        Command::Train(a) => train(a, stdout),
        Command::Eval(a) => eval(a, stdout),
        Command::Generate(a) => generate(a, stdout),
    }
}

fn emit<T: Serialize>(report: &T, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

#[derive(Debug, Serialize)]
struct RankSummary {
    min: usize,
    max: usize,
    distinct: usize,
    /// Negatives placed above every positive.
    above_all: usize,
    /// Negatives placed below every positive.
    below_all: usize,
    ranks: Vec<usize>,
}

impl RankSummary {
    fn new(iv: &InterleavingVector) -> Self {
        let r = iv.ranks();
        let mut distinct = r.to_vec();
        distinct.dedup();
        Self {
            min: r[0],
            max: r[r.len() - 1],
            distinct: distinct.len(),
            above_all: r.iter().filter(|&&x| x == 1).count(),
            below_all: r.iter().filter(|&&x| x == iv.positives() + 1).count(),
            ranks: r.to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
struct InferReport {
    loss: &'static str,
    algo: &'static str,
    positives: usize,
    negatives: usize,
    objective: f64,
    loss_value: f64,
    comparisons: u64,
    scan_steps: u64,
    /// Patterns evaluated by exhaustive search.
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluated: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    median_verified: Option<bool>,
    opt: RankSummary,
    /// Sample ids of the most violating ranking, best first.
    ranking: Vec<String>,
}

/// Sample ids in the order the interleaving vector prescribes, classes
/// each kept in descending score order.
fn ranking_ids(file: &ScoreFile, instance: &ScoredInstance, iv: &InterleavingVector) -> Vec<String> {
    let negs = instance.sorted_negatives();
    let pos_ids = instance.pos_ids();
    let mut out = Vec::with_capacity(pos_ids.len() + negs.len());
    let mut j = 0;
    for k in 0..=pos_ids.len() {
        while j < negs.len() && iv.ranks()[j] == k + 1 {
            out.push(file.ids[negs[j].id].clone());
            j += 1;
        }
        if k < pos_ids.len() {
            out.push(file.ids[pos_ids[k]].clone());
        }
    }
    out
}

/// After a solver has rearranged the negatives, sorting them must keep
/// their ranks monotone and reproduce the objective.
fn arrangement_consistent(
    arranged: &ScoredInstance,
    original: &ScoredInstance,
    loss: &RankLoss,
    ctx: &LossContext,
    res: &InferenceResult,
) -> Result<bool> {
    let mut pairs: Vec<(Scored, usize)> = arranged.neg().iter().copied().zip(res.opt.ranks().iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.cmp_desc(&b.0));
    let monotone = pairs.windows(2).all(|w| w[0].1 <= w[1].1);
    let value = objective_value(original, loss, ctx, &res.opt)?;
    Ok(monotone && (value - res.objective).abs() <= 1e-9 * value.abs().max(1.0))
}

fn infer(a: InferArgs, stdout: &mut dyn Write) -> Result<u8> {
    let loss = a.loss.loss();
    if !loss.is_qs_suitable() && a.algo != AlgoArg::Brute && !a.allow_unsafe {
        return Err(Error::Invalid(format!(
            "loss {} is not exact under the monotone solvers; use --algo brute or pass --unsafe",
            loss.name()
        )));
    }
    let file = io::read_score_file(&a.input)?;
    let instance = file.instance()?;
    let ctx = LossContext::new(&loss, instance.positives(), instance.negatives())?;
    let selection = match a.pivot {
        PivotArg::Random => SelectionMode::Randomized { seed: a.seed },
        PivotArg::Mom => SelectionMode::MedianOfMedians,
    };
    let opts = InferenceOptions { selection, allow_unsuitable: a.allow_unsafe };
    let mut work = instance.clone();
    let (res, evaluated, algo) = match a.algo {
        AlgoArg::Qs => (opt_ranks(&mut work, &loss, &ctx, &opts)?, None, "qs"),
        AlgoArg::Sort => (sort_baseline(&mut work, &loss, &ctx, &opts)?, None, "sort"),
        AlgoArg::Brute => {
            let best = brute_force_pattern(&instance, &loss, &ctx)?;
            let loss_at_opt = qsrank_core::loss::loss_value(&loss, &best.opt, &ctx)?;
            let res = InferenceResult {
                opt: best.opt,
                objective: best.objective,
                loss_at_opt,
                comparisons: 0,
                scan_steps: 0,
            };
            (res, Some(best.evaluated), "brute")
        }
    };
    let median_verified = match (a.verify_median, a.algo) {
        (true, AlgoArg::Qs | AlgoArg::Sort) => Some(arrangement_consistent(&work, &instance, &loss, &ctx, &res)?),
        _ => None,
    };
    let report = InferReport {
        loss: loss.name(),
        algo,
        positives: instance.positives(),
        negatives: instance.negatives(),
        objective: res.objective,
        loss_value: res.loss_at_opt,
        comparisons: res.comparisons,
        scan_steps: res.scan_steps,
        evaluated,
        median_verified,
        ranking: ranking_ids(&file, &instance, &res.opt),
        opt: RankSummary::new(&res.opt),
    };
    emit(&report, a.out.as_ref(), stdout)?;
    Ok(if median_verified == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

#[derive(Debug, Default, Serialize)]
struct LossTally {
    loss: &'static str,
    trials: usize,
    passed: usize,
    mismatches: usize,
    monotonicity_violations: usize,
    /// Instances where some negative's unconstrained best rank breaks
    /// monotonicity (only tracked for losses the solver is not exact for).
    greedy_failures: usize,
    /// Greedy failures that also cost objective value.
    suboptimal: usize,
    max_gap: f64,
}

#[derive(Debug, Serialize)]
struct OracleReportOut {
    seed: u64,
    max_p: usize,
    max_n: usize,
    tolerance: f64,
    all_passed: bool,
    losses: Vec<LossTally>,
}

fn oracle_check(a: OracleArgs, stdout: &mut dyn Write) -> Result<u8> {
    if a.max_p == 0 || a.max_n == 0 {
        return Err(Error::Invalid("--max-p and --max-n must be at least 1".into()));
    }
    const TOL: f64 = 1e-9;
    let mut tallies = Vec::new();
    for (li, loss_arg) in a.loss.iter().enumerate() {
        let loss = loss_arg.loss();
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed.wrapping_add(li as u64));
        let mut t = LossTally { loss: loss.name(), trials: a.trials, ..Default::default() };
        for trial in 0..a.trials {
            let p = rng.random_range(1..=a.max_p);
            let n = rng.random_range(1..=a.max_n);
            let pos: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
            let neg: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let instance = ScoredInstance::from_scores(&pos, &neg)?;
            let ctx = LossContext::new(&loss, p, n)?;
            let brute = brute_force_pattern(&instance, &loss, &ctx)?;
            if loss.is_qs_suitable() {
                let opts = InferenceOptions {
                    selection: SelectionMode::Randomized { seed: a.seed.wrapping_add(trial as u64) },
                    allow_unsuitable: false,
                };
                let qs = opt_ranks(&mut instance.clone(), &loss, &ctx, &opts)?;
                let sorted = sort_baseline(&mut instance.clone(), &loss, &ctx, &opts)?;
                let gap = (qs.objective - brute.objective).abs().max((sorted.objective - brute.objective).abs());
                t.max_gap = t.max_gap.max(gap);
                let monotone = |iv: &InterleavingVector| iv.ranks().windows(2).all(|w| w[0] <= w[1]);
                let ok_monotone = monotone(&qs.opt) && monotone(&sorted.opt);
                if !ok_monotone {
                    t.monotonicity_violations += 1;
                }
                if gap > TOL {
                    t.mismatches += 1;
                }
                if gap <= TOL && ok_monotone {
                    t.passed += 1;
                }
            } else {
                let (_, report) = opt_ranks_checked(
                    &mut instance.clone(),
                    &loss,
                    &ctx,
                    SelectionMode::Randomized { seed: a.seed.wrapping_add(trial as u64) },
                )?;
                t.max_gap = t.max_gap.max(report.gap);
                if report.greedy_violation.is_some() {
                    t.greedy_failures += 1;
                }
                if report.gap > TOL {
                    t.suboptimal += 1;
                }
                t.passed += 1;
            }
        }
        tallies.push(t);
    }
    let all_passed = tallies.iter().all(|t| t.mismatches == 0 && t.monotonicity_violations == 0);
    let report =
        OracleReportOut { seed: a.seed, max_p: a.max_p, max_n: a.max_n, tolerance: TOL, all_passed, losses: tallies };
    emit(&report, a.out.as_ref(), stdout)?;
    Ok(if all_passed { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Debug, Serialize)]
struct BenchReportOut {
    report: String,
    rows: usize,
    points: Vec<bench::BenchPoint>,
}

fn bench_cmd(a: BenchArgs, stdout: &mut dyn Write) -> Result<u8> {
    let loss = a.loss.loss();
    if !loss.is_qs_suitable() {
        return Err(Error::Invalid(format!("loss {} cannot be benchmarked with the monotone solvers", loss.name())));
    }
    let points = match (a.p_list.is_empty(), a.n_list.is_empty()) {
        (true, true) => Sweep::parse(&a.sweep)?.points(),
        (false, false) => a.p_list.iter().flat_map(|&p| a.n_list.iter().map(move |&n| (p, n))).collect(),
        _ => return Err(Error::Invalid("--p-list and --n-list must be given together".into())),
    };
    let algos = a.algo_list.iter().map(|s| Algo::parse(s)).collect::<Result<Vec<_>>>()?;
    let config = BenchConfig { loss, points, algos, repeats: a.repeats, seed: a.seed };
    let rows = bench::run(&config)?;
    io::write_bench_report(&a.out, &rows)?;
    let report = BenchReportOut { report: a.out.display().to_string(), rows: rows.len(), points: bench::summarize(&rows) };
    emit(&report, None, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct EpochOut {
    epoch: usize,
    hinge: f64,
    objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fd_error: Option<f64>,
}

#[derive(Debug, Serialize)]
struct TrainReport {
    loss: &'static str,
    model: String,
    samples: usize,
    dimension: usize,
    epochs: usize,
    initial_surrogate: f64,
    final_surrogate: f64,
    train_ap: f64,
    train_ndcg: f64,
    log: Vec<EpochOut>,
}

fn train(a: TrainArgs, stdout: &mut dyn Write) -> Result<u8> {
    let raw = io::read_feature_file(&a.data)?;
    let data = if a.intercept { raw.with_constant_feature(1.0) } else { raw };
    let (objective, loss_kind) = match a.loss {
        TrainLossArg::Ap => (TrainObjective::Rank(RankLoss::Ap), "ap"),
        TrainLossArg::Ndcg => (TrainObjective::Rank(RankLoss::Ndcg(Discount::LogConvex)), "ndcg"),
        TrainLossArg::ZeroOne => (TrainObjective::ZeroOne, "zero-one"),
    };
    let mut config = TrainConfig::new(objective);
    config.epochs = a.epochs;
    config.learning_rate = a.lr;
    config.decay = match a.decay {
        DecayArg::InvSqrt => StepDecay::InvSqrt,
        DecayArg::Constant => StepDecay::Constant,
    };
    config.l2_lambda = a.lambda;
    config.seed = a.seed;
    config.fd_check = a.fd_check;
    let outcome = fit(&data, &config)?;
    let surrogate = |m: &LinearModel| -> Result<f64> {
        Ok(match objective {
            TrainObjective::Rank(loss) => hinge_objective(m, &data, &loss, &InferenceOptions::default())?,
            TrainObjective::ZeroOne => zero_one_hinge(m, &data)?,
        })
    };
    let doc = ModelDocument {
        dimension: data.dim(),
        weights: outcome.model.weights.clone(),
        loss_kind: loss_kind.to_string(),
        trained_epochs: a.epochs,
        seed: a.seed,
        intercept: a.intercept,
    };
    io::write_model(&a.out, &doc)?;
    let report = TrainReport {
        loss: loss_kind,
        model: a.out.display().to_string(),
        samples: data.len(),
        dimension: data.dim(),
        epochs: a.epochs,
        initial_surrogate: outcome.log[0].hinge,
        final_surrogate: surrogate(&outcome.model)?,
        train_ap: eval_metric(&outcome.model, &data, &RankLoss::Ap)?,
        train_ndcg: eval_metric(&outcome.model, &data, &RankLoss::Ndcg(Discount::LogConvex))?,
        log: outcome
            .log
            .iter()
            .map(|r| EpochOut { epoch: r.epoch, hinge: r.hinge, objective: r.objective, fd_error: r.fd_error })
            .collect(),
    };
    emit(&report, a.report.as_ref(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct EvalReport {
    metric: &'static str,
    value: f64,
    loss: f64,
    samples: usize,
    positives: usize,
    model_loss_kind: String,
}

fn eval(a: EvalArgs, stdout: &mut dyn Write) -> Result<u8> {
    let doc = io::read_model(&a.model)?;
    let raw = io::read_feature_file(&a.data)?;
    if raw.dim() != doc.data_dimension() {
        return Err(Error::Invalid(format!(
            "model expects {} features but the data file has {}",
            doc.data_dimension(),
            raw.dim()
        )));
    }
    let data = if doc.intercept { raw.with_constant_feature(1.0) } else { raw };
    let model = doc.model()?;
    let (metric, name) = match a.metric {
        MetricArg::Ap => (RankLoss::Ap, "ap"),
        MetricArg::Ndcg => (RankLoss::Ndcg(Discount::LogConvex), "ndcg"),
    };
    let value = eval_metric(&model, &data, &metric)?;
    let report = EvalReport {
        metric: name,
        value,
        loss: 1.0 - value,
        samples: data.len(),
        positives: data.positives(),
        model_loss_kind: doc.loss_kind,
    };
    emit(&report, a.out.as_ref(), stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct GenerateReport {
    kind: &'static str,
    out: String,
    positives: usize,
    negatives: usize,
    dimension: usize,
    seed: u64,
}

fn generate(a: GenerateArgs, stdout: &mut dyn Write) -> Result<u8> {
    let (kind, p, n, d) = match a.kind {
        GenerateKind::Scores => {
            if a.n_pos == 0 || a.n_neg == 0 {
                return Err(Error::Invalid("need at least one sample per class".into()));
            }
            let (pos, neg) = synthetic::uniform_scores(a.n_pos, a.n_neg, a.seed);
            let file = ScoreFile {
                ids: (0..a.n_pos).map(|i| format!("p{i:05}")).chain((0..a.n_neg).map(|i| format!("n{i:05}"))).collect(),
                labels: std::iter::repeat_n(qsrank_core::learner::Label::Positive, a.n_pos)
                    .chain(std::iter::repeat_n(qsrank_core::learner::Label::Negative, a.n_neg))
                    .collect(),
                scores: pos.into_iter().chain(neg).collect(),
            };
            io::write_score_file(&a.out, &file)?;
            ("scores", a.n_pos, a.n_neg, 0)
        }
        GenerateKind::Features => {
            let spec = SyntheticSpec {
                n_pos: a.n_pos,
                n_neg: a.n_neg,
                d: a.dim,
                separation: a.separation,
                noise_sigma: a.noise,
                seed: a.seed,
            };
            let data = synthetic::generate_synthetic(&spec)?;
            io::write_feature_file(&a.out, &data)?;
            ("features", a.n_pos, a.n_neg, a.dim)
        }
        GenerateKind::Imbalanced => {
            let data = synthetic::imbalanced_overlap(a.n_pos, a.seed)?;
            io::write_feature_file(&a.out, &data)?;
            ("imbalanced", a.n_pos, data.len() - a.n_pos, data.dim())
        }
    };
    let report = GenerateReport { kind, out: a.out.display().to_string(), positives: p, negatives: n, dimension: d, seed: a.seed };
    emit(&report, None, stdout)?;
    Ok(EXIT_OK)
}
