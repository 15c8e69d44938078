//! Trial execution: data preparation, training, checkpoint evaluation.

use std::collections::BTreeMap;

use ndarray::ArrayView1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{
    load_csv, make_os_pu, make_ts_pu, split_validation, synthesize_labeled, GaussianMixtureSpec,
    LabeledDataset, LoadedCsv, PuDataset, Setting,
};
use crate::harness::{
    aggregate, child_seed, sample_hyperparams, select_checkpoint, AlgoFamily, DatasetSource,
    ExperimentConfig, HarnessError, HyperparamDraw, SeedStream, SummaryTable, SweepTable,
};
use crate::metrics::{self, MetricKind};
use crate::model::{score_batch, Classifier, OptimizerState};
use crate::risk::{pusb_threshold, train_ts, EstimatorKind, TrainSchedule};
use crate::selection::{oracle_accuracy_at, proxy_accuracy_at, proxy_auc, Criterion};

/// Sweep coordinates attached to every trial of a swept benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub name: String,
    pub value: f64,
}

/// Validation criteria and test metrics of one evaluated checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub iteration: usize,
    pub pa: Option<f64>,
    pub pauc: Option<f64>,
    pub oa: Option<f64>,
    pub test_acc: Option<f64>,
    pub test_auc: Option<f64>,
    pub test_f1: Option<f64>,
    pub test_precision: Option<f64>,
    pub test_recall: Option<f64>,
    /// Tokens of test metrics whose denominator was degenerate here (their
    /// recorded value is 0 by convention).
    pub degenerate: Vec<String>,
}

impl CheckpointRecord {
    pub fn criterion_value(&self, criterion: Criterion) -> Option<f64> {
        match criterion {
            Criterion::Pa => self.pa,
            Criterion::Pauc => self.pauc,
            Criterion::Oa => self.oa,
        }
    }

    pub fn metric_value(&self, metric: MetricKind) -> Option<f64> {
        match metric {
            MetricKind::Acc => self.test_acc,
            MetricKind::Auc => self.test_auc,
            MetricKind::F1 => self.test_f1,
            MetricKind::Precision => self.test_precision,
            MetricKind::Recall => self.test_recall,
        }
    }
}

/// Everything recorded about one (algorithm, split, draw) trial. Failed
/// trials keep their coordinates and reason but no checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub algorithm: String,
    pub algo_index: usize,
    pub split_index: usize,
    pub draw_index: usize,
    pub master_seed: u64,
    pub sweep: Option<SweepPoint>,
    pub hyperparams: HyperparamDraw,
    pub checkpoints: Vec<CheckpointRecord>,
    /// Criterion token to index of the selected checkpoint.
    pub selected: BTreeMap<String, usize>,
    /// Criterion token to the classifier at its selected checkpoint.
    pub selected_models: BTreeMap<String, Classifier>,
    /// `criterion:metric` to the test metric at the selected checkpoint.
    pub summary: BTreeMap<String, f64>,
    pub failed: Option<String>,
}

/// Dataset source after one-time loading; synthetic sources stay lazy.
#[derive(Debug, Clone)]
pub enum PreparedSource {
    Synth(GaussianMixtureSpec),
    Csv {
        train: PuDataset,
        test: LabeledDataset,
    },
}

/// Load or describe the configured dataset. CSV sources are read once here;
/// a missing oracle column is rejected immediately when `oa` selection was
/// requested, before any training starts.
pub fn prepare_source(cfg: &ExperimentConfig) -> Result<PreparedSource, HarnessError> {
    match &cfg.dataset {
        DatasetSource::Synth(synth) => Ok(PreparedSource::Synth(synth.mixture_spec(cfg.prior)?)),
        DatasetSource::Csv { train, test } => {
            let train = match load_csv(train)? {
                LoadedCsv::Pu(pu) => pu,
                LoadedCsv::Labeled(_) => {
                    return Err(HarnessError::Config(format!(
                        "{}: expected the PU schema for `dataset.train`",
                        train.display()
                    )))
                }
            };
            let needs_oracle = cfg.criteria.iter().any(Criterion::needs_oracle);
            if needs_oracle && train.oracle_unlabeled_labels.is_none() {
                return Err(HarnessError::Config(
                    "criterion `oa` needs oracle labels, but the training CSV has none".into(),
                ));
            }
            let train = train.into_dataset(cfg.setting, cfg.prior, cfg.label_frequency)?;
            let test = match load_csv(test)? {
                LoadedCsv::Labeled(labeled) => labeled,
                LoadedCsv::Pu(_) => {
                    return Err(HarnessError::Config(format!(
                        "{}: expected the labeled schema for `dataset.test`",
                        test.display()
                    )))
                }
            };
            if train.dim() != test.dim() {
                return Err(HarnessError::Config(format!(
                    "train dim {} does not match test dim {}",
                    train.dim(),
                    test.dim()
                )));
            }
            Ok(PreparedSource::Csv { train, test })
        }
    }
}

/// Data shared by all trials of one split index: the training pool, the
/// held-out validation pool, and the labeled test set.
#[derive(Debug, Clone)]
pub struct SplitData {
    pub train: PuDataset,
    pub val: PuDataset,
    pub test: LabeledDataset,
}

/// Materialize the data for one split. Synthetic sources draw fresh train
/// and test samples from per-split child seeds; CSV sources reuse the
/// loaded pools and only resample the train/validation split.
pub fn prepare_split(
    cfg: &ExperimentConfig,
    source: &PreparedSource,
    split_index: usize,
) -> Result<SplitData, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(
        cfg.master_seed,
        SeedStream::Data,
        split_index as u64,
        0,
    ));
    let full = match source {
        PreparedSource::Synth(spec) => {
            let synth = match &cfg.dataset {
                DatasetSource::Synth(s) => s,
                DatasetSource::Csv { .. } => unreachable!("synthetic source from csv config"),
            };
            match cfg.setting {
                Setting::Os => {
                    let n = synth.n.expect("validated: OS synth has n");
                    let c = cfg.label_frequency.expect("validated: OS has c");
                    make_os_pu(spec, n, c, &mut rng)?
                }
                Setting::Ts => {
                    let n_p = synth.n_p.expect("validated: TS synth has np");
                    let n_u = synth.n_u.expect("validated: TS synth has nu");
                    make_ts_pu(spec, n_p, n_u, &mut rng)?
                }
            }
        }
        PreparedSource::Csv { train, .. } => train.clone(),
    };
    let parts = split_validation(&full, cfg.val_rate, &mut rng)?;
    let test = match source {
        PreparedSource::Synth(spec) => {
            let synth = match &cfg.dataset {
                DatasetSource::Synth(s) => s,
                DatasetSource::Csv { .. } => unreachable!("synthetic source from csv config"),
            };
            let mut test_rng = ChaCha8Rng::seed_from_u64(child_seed(
                cfg.master_seed,
                SeedStream::Test,
                split_index as u64,
                0,
            ));
            synthesize_labeled(spec, synth.test_n, &mut test_rng)?
        }
        PreparedSource::Csv { test, .. } => test.clone(),
    };
    Ok(SplitData {
        train: parts.train,
        val: parts.validation,
        test,
    })
}

fn estimator_kind(family: AlgoFamily, calibrated: bool, draw: &HyperparamDraw) -> EstimatorKind {
    let kind = match family {
        AlgoFamily::UPu | AlgoFamily::Pusb => EstimatorKind::upu(),
        AlgoFamily::NnPu => EstimatorKind::nnpu(draw.nnpu_tolerance),
        AlgoFamily::NnPuGa => EstimatorKind::nnpu_ga(draw.nnpu_tolerance, 1.0),
    };
    kind.with_calibration(calibrated)
}

/// Decision thresholds for one checkpoint: 0 for sign rules, the top-π
/// quantile of the evaluation pool's own scores for the PUSB family. The
/// validation pool is the marginal sample (`U` under TS, `P ∪ U` under OS).
fn decision_thresholds(
    family: AlgoFamily,
    prior: f64,
    val_scores_p: &[f64],
    val_scores_u: &[f64],
    test_scores: &[f64],
    setting: Setting,
) -> Result<(f64, f64), HarnessError> {
    if family != AlgoFamily::Pusb {
        return Ok((0.0, 0.0));
    }
    let pool: Vec<f64> = match setting {
        Setting::Ts => val_scores_u.to_vec(),
        Setting::Os => val_scores_p
            .iter()
            .chain(val_scores_u.iter())
            .copied()
            .collect(),
    };
    let val_threshold = pusb_threshold(&pool, prior)?;
    let test_threshold = pusb_threshold(test_scores, prior)?;
    Ok((val_threshold, test_threshold))
}

fn evaluate_checkpoint(
    cfg: &ExperimentConfig,
    family: AlgoFamily,
    data: &SplitData,
    iteration: usize,
    classifier: &Classifier,
) -> Result<CheckpointRecord, HarnessError> {
    let val_scores_p = score_batch(classifier, data.val.positives().view())?.to_vec();
    let val_scores_u = score_batch(classifier, data.val.unlabeled().view())?.to_vec();
    let test_scores = score_batch(classifier, data.test.features().view())?;
    let (val_threshold, test_threshold) = decision_thresholds(
        family,
        cfg.prior,
        &val_scores_p,
        &val_scores_u,
        test_scores.as_slice().expect("owned scores are contiguous"),
        cfg.setting,
    )?;

    let mut record = CheckpointRecord {
        iteration,
        pa: None,
        pauc: None,
        oa: None,
        test_acc: None,
        test_auc: None,
        test_f1: None,
        test_precision: None,
        test_recall: None,
        degenerate: Vec::new(),
    };
    for &criterion in &cfg.criteria {
        let value = match criterion {
            Criterion::Pa => proxy_accuracy_at(classifier, &data.val, cfg.prior, val_threshold)?,
            Criterion::Pauc => proxy_auc(classifier, &data.val)?,
            Criterion::Oa => oracle_accuracy_at(classifier, &data.val, val_threshold)?,
        };
        match criterion {
            Criterion::Pa => record.pa = Some(value),
            Criterion::Pauc => record.pauc = Some(value),
            Criterion::Oa => record.oa = Some(value),
        }
    }

    let labels: ArrayView1<i8> = data.test.labels().view();
    let counts = metrics::confusion_at(test_scores.view(), labels, test_threshold)?;
    for &metric in &cfg.metrics {
        let outcome = match metric {
            MetricKind::Acc => metrics::accuracy(&counts),
            MetricKind::Precision => metrics::precision(&counts),
            MetricKind::Recall => metrics::recall(&counts),
            MetricKind::F1 => metrics::f1(&counts),
            MetricKind::Auc => crate::metrics::MetricOutcome {
                value: metrics::auc(test_scores.view(), labels)?,
                degenerate: false,
            },
        };
        if outcome.degenerate {
            record.degenerate.push(metric.as_str().to_string());
        }
        match metric {
            MetricKind::Acc => record.test_acc = Some(outcome.value),
            MetricKind::Auc => record.test_auc = Some(outcome.value),
            MetricKind::F1 => record.test_f1 = Some(outcome.value),
            MetricKind::Precision => record.test_precision = Some(outcome.value),
            MetricKind::Recall => record.test_recall = Some(outcome.value),
        }
    }
    Ok(record)
}

fn trial_body(
    cfg: &ExperimentConfig,
    algo_index: usize,
    split_index: usize,
    draw_index: usize,
    data: &SplitData,
    draw: &HyperparamDraw,
) -> Result<
    (
        Vec<CheckpointRecord>,
        BTreeMap<String, usize>,
        BTreeMap<String, Classifier>,
        BTreeMap<String, f64>,
    ),
    HarnessError,
> {
    let algo = &cfg.algorithms[algo_index];
    let kind = estimator_kind(algo.family, algo.calibrated, draw);
    let schedule = TrainSchedule {
        iterations: cfg.iterations,
        batch_p: draw.batch_size.min(data.train.n_p()),
        batch_u: draw.batch_size.min(data.train.n_u()),
        eval_every: cfg.eval_every,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(
        cfg.master_seed,
        SeedStream::Trial,
        split_index as u64,
        draw_index as u64,
    ));
    let architecture = cfg.model.architecture(data.train.dim());
    let classifier = Classifier::init_random(architecture, &mut rng)?;
    let opt = OptimizerState::new(
        draw.learning_rate,
        draw.momentum,
        draw.weight_decay,
        architecture.param_count(),
    )?;

    let mut snapshots: Vec<(usize, Classifier)> = Vec::new();
    train_ts(
        kind,
        &data.train,
        classifier,
        opt,
        cfg.loss,
        &schedule,
        &mut rng,
        |iteration, clf| snapshots.push((iteration, clf.clone())),
    )?;

    let mut checkpoints = Vec::with_capacity(snapshots.len());
    for (iteration, clf) in &snapshots {
        checkpoints.push(evaluate_checkpoint(cfg, algo.family, data, *iteration, clf)?);
    }

    let mut selected = BTreeMap::new();
    let mut selected_models = BTreeMap::new();
    let mut summary = BTreeMap::new();
    for &criterion in &cfg.criteria {
        let values: Vec<f64> = checkpoints
            .iter()
            .map(|r| r.criterion_value(criterion).expect("criterion was evaluated"))
            .collect();
        let idx = select_checkpoint(&values).expect("at least one checkpoint");
        selected.insert(criterion.as_str().to_string(), idx);
        selected_models.insert(criterion.as_str().to_string(), snapshots[idx].1.clone());
        for &metric in &cfg.metrics {
            let value = checkpoints[idx]
                .metric_value(metric)
                .expect("metric was evaluated");
            summary.insert(format!("{}:{}", criterion.as_str(), metric.as_str()), value);
        }
    }
    Ok((checkpoints, selected, selected_models, summary))
}

/// Run one trial. Never fails: degenerate data, divergence, or evaluation
/// errors are recorded on the result and the benchmark continues.
pub fn run_trial(
    cfg: &ExperimentConfig,
    algo_index: usize,
    split_index: usize,
    draw_index: usize,
    data: &SplitData,
    draw: &HyperparamDraw,
) -> TrialResult {
    let mut result = TrialResult {
        algorithm: cfg.algorithms[algo_index].token.clone(),
        algo_index,
        split_index,
        draw_index,
        master_seed: cfg.master_seed,
        sweep: None,
        hyperparams: *draw,
        checkpoints: Vec::new(),
        selected: BTreeMap::new(),
        selected_models: BTreeMap::new(),
        summary: BTreeMap::new(),
        failed: None,
    };
    match trial_body(cfg, algo_index, split_index, draw_index, data, draw) {
        Ok((checkpoints, selected, selected_models, summary)) => {
            result.checkpoints = checkpoints;
            result.selected = selected;
            result.selected_models = selected_models;
            result.summary = summary;
        }
        Err(e) => result.failed = Some(e.to_string()),
    }
    result
}

/// Materialize a synthetic spec into a PU training pool and a labeled test
/// set, using the same seed streams as a benchmark run's first split.
pub fn generate_synth(
    spec: &crate::harness::SynthSpec,
) -> Result<(PuDataset, LabeledDataset), HarnessError> {
    let mixture = spec.dataset.mixture_spec(spec.prior)?;
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(
        spec.master_seed,
        SeedStream::Data,
        0,
        0,
    ));
    let train = match spec.setting {
        Setting::Os => make_os_pu(
            &mixture,
            spec.dataset.n.expect("validated: OS spec has n"),
            spec.label_frequency.expect("validated: OS spec has c"),
            &mut rng,
        )?,
        Setting::Ts => make_ts_pu(
            &mixture,
            spec.dataset.n_p.expect("validated: TS spec has np"),
            spec.dataset.n_u.expect("validated: TS spec has nu"),
            &mut rng,
        )?,
    };
    let mut test_rng = ChaCha8Rng::seed_from_u64(child_seed(
        spec.master_seed,
        SeedStream::Test,
        0,
        0,
    ));
    let test = synthesize_labeled(&mixture, spec.dataset.test_n, &mut test_rng)?;
    Ok((train, test))
}

/// Everything a benchmark run produces before any file is written.
#[derive(Debug)]
pub struct BenchmarkOutput {
    pub trials: Vec<TrialResult>,
    /// Present for plain runs, absent for sweeps.
    pub summary: Option<SummaryTable>,
    /// One table per sweep key; empty for plain runs.
    pub sweeps: Vec<SweepTable>,
    pub warnings: Vec<String>,
}

fn run_plain(
    cfg: &ExperimentConfig,
    sweep: Option<&SweepPoint>,
) -> Result<Vec<TrialResult>, HarnessError> {
    let source = prepare_source(cfg)?;
    let splits: Vec<Result<SplitData, String>> = (0..cfg.splits)
        .map(|s| prepare_split(cfg, &source, s).map_err(|e| e.to_string()))
        .collect();
    let draws: Vec<HyperparamDraw> = (0..cfg.draws)
        .map(|d| {
            let seed = child_seed(cfg.master_seed, SeedStream::Hyper, d as u64, 0);
            sample_hyperparams(&mut ChaCha8Rng::seed_from_u64(seed))
        })
        .collect();

    let mut plans = Vec::with_capacity(cfg.algorithms.len() * cfg.splits * cfg.draws);
    for algo_index in 0..cfg.algorithms.len() {
        for split_index in 0..cfg.splits {
            for draw_index in 0..cfg.draws {
                plans.push((algo_index, split_index, draw_index));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let mut trials: Vec<TrialResult> = pool.install(|| {
        plans
            .par_iter()
            .map(|&(algo_index, split_index, draw_index)| match &splits[split_index] {
                Ok(data) => run_trial(
                    cfg,
                    algo_index,
                    split_index,
                    draw_index,
                    data,
                    &draws[draw_index],
                ),
                Err(reason) => TrialResult {
                    algorithm: cfg.algorithms[algo_index].token.clone(),
                    algo_index,
                    split_index,
                    draw_index,
                    master_seed: cfg.master_seed,
                    sweep: None,
                    hyperparams: draws[draw_index],
                    checkpoints: Vec::new(),
                    selected: BTreeMap::new(),
                    selected_models: BTreeMap::new(),
                    summary: BTreeMap::new(),
                    failed: Some(format!("data preparation failed: {reason}")),
                },
            })
            .collect()
    });
    if let Some(point) = sweep {
        for trial in &mut trials {
            trial.sweep = Some(point.clone());
        }
    }
    Ok(trials)
}

/// Run the full benchmark described by the config: every sweep value (or
/// the single configured point), every algorithm, split, and draw. Trial
/// order and all results are independent of the worker-pool size.
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<BenchmarkOutput, HarnessError> {
    let mut trials = Vec::new();
    match &cfg.sweep {
        None => trials.extend(run_plain(cfg, None)?),
        Some(sweep) => {
            for &value in &sweep.values {
                let sub = cfg.at_sweep_value(sweep.key, value);
                let point = SweepPoint {
                    name: sweep.key.as_str().to_string(),
                    value,
                };
                trials.extend(run_plain(&sub, Some(&point))?);
            }
        }
    }
    let agg = aggregate(&trials);
    Ok(BenchmarkOutput {
        trials,
        summary: agg.summary,
        sweeps: agg.sweeps,
        warnings: agg.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Setting;
    use crate::harness::{AlgorithmSpec, ModelSpec, SynthDataset};
    use crate::model::LossKind;
    use ndarray::{Array1, Array2};

    fn tiny_config(algos: &str) -> ExperimentConfig {
        ExperimentConfig {
            master_seed: 11,
            dataset: DatasetSource::Synth(SynthDataset {
                mean_pos: vec![1.5, 0.0],
                mean_neg: vec![-1.5, 0.0],
                scale_pos: 1.0,
                scale_neg: 1.0,
                n: Some(300),
                n_p: None,
                n_u: None,
                test_n: 200,
            }),
            setting: Setting::Os,
            prior: 0.5,
            label_frequency: Some(0.5),
            val_rate: 0.25,
            algorithms: algos
                .split(',')
                .map(|t| t.parse::<AlgorithmSpec>().unwrap())
                .collect(),
            loss: LossKind::Logistic,
            model: ModelSpec::Linear,
            iterations: 60,
            eval_every: 20,
            splits: 2,
            draws: 2,
            criteria: vec![Criterion::Pa, Criterion::Pauc],
            metrics: vec![MetricKind::Acc, MetricKind::Auc],
            oracle_mode: false,
            threads: 1,
            out_dir: "unused".into(),
            sweep: None,
        }
    }

    #[test]
    fn benchmark_produces_complete_trial_grid() {
        let cfg = tiny_config("upu,nnpu");
        let out = run_benchmark(&cfg).unwrap();
        assert_eq!(out.trials.len(), 2 * 2 * 2);
        for trial in &out.trials {
            assert!(trial.failed.is_none(), "unexpected failure: {:?}", trial.failed);
            assert_eq!(trial.checkpoints.len(), 3);
            assert_eq!(trial.selected.len(), 2);
            assert_eq!(trial.summary.len(), 4);
            assert!(trial.summary.contains_key("pa:acc"));
            assert!(trial.summary.contains_key("pauc:auc"));
            for record in &trial.checkpoints {
                assert!(record.pa.unwrap().is_finite());
                assert!(record.oa.is_none());
            }
        }
        let expected: Vec<(usize, usize, usize)> = {
            let mut v = Vec::new();
            for a in 0..2 {
                for s in 0..2 {
                    for d in 0..2 {
                        v.push((a, s, d));
                    }
                }
            }
            v
        };
        let got: Vec<(usize, usize, usize)> = out
            .trials
            .iter()
            .map(|t| (t.algo_index, t.split_index, t.draw_index))
            .collect();
        assert_eq!(got, expected);
        assert!(out.summary.is_some());
        assert!(out.sweeps.is_empty());
    }

    #[test]
    fn results_do_not_depend_on_worker_count() {
        let mut cfg = tiny_config("upu,pusb-c");
        let one = run_benchmark(&cfg).unwrap();
        cfg.threads = 4;
        let four = run_benchmark(&cfg).unwrap();
        assert_eq!(one.trials, four.trials);
        let rerun = run_benchmark(&cfg).unwrap();
        assert_eq!(four.trials, rerun.trials);
    }

    #[test]
    fn splits_share_data_across_algorithms_and_draws() {
        let cfg = tiny_config("upu,nnpu");
        let source = prepare_source(&cfg).unwrap();
        let a = prepare_split(&cfg, &source, 0).unwrap();
        let b = prepare_split(&cfg, &source, 0).unwrap();
        assert_eq!(a.train.positives(), b.train.positives());
        assert_eq!(a.test.features(), b.test.features());
        let c = prepare_split(&cfg, &source, 1).unwrap();
        assert_ne!(a.train.positives(), c.train.positives());
    }

    #[test]
    fn trials_with_same_split_and_draw_share_hyperparams_and_init() {
        let cfg = tiny_config("upu,nnpu");
        let out = run_benchmark(&cfg).unwrap();
        let upu = &out.trials[0];
        let nnpu = out
            .trials
            .iter()
            .find(|t| t.algo_index == 1 && t.split_index == 0 && t.draw_index == 0)
            .unwrap();
        assert_eq!(upu.hyperparams, nnpu.hyperparams);
    }

    #[test]
    fn pu_criteria_ignore_oracle_labels() {
        let cfg = tiny_config("upu");
        let source = prepare_source(&cfg).unwrap();
        let data = prepare_split(&cfg, &source, 0).unwrap();
        let stripped = SplitData {
            train: data.train.without_oracle_labels(),
            val: data.val.without_oracle_labels(),
            test: data.test.clone(),
        };
        let draw = sample_hyperparams(&mut ChaCha8Rng::seed_from_u64(5));
        let with = run_trial(&cfg, 0, 0, 0, &data, &draw);
        let without = run_trial(&cfg, 0, 0, 0, &stripped, &draw);
        assert!(with.failed.is_none() && without.failed.is_none());
        assert_eq!(with.checkpoints, without.checkpoints);
        assert_eq!(with.selected, without.selected);
    }

    #[test]
    fn oracle_criterion_runs_when_enabled() {
        let mut cfg = tiny_config("upu");
        cfg.criteria = vec![Criterion::Pa, Criterion::Oa];
        cfg.oracle_mode = true;
        let out = run_benchmark(&cfg).unwrap();
        for trial in &out.trials {
            assert!(trial.failed.is_none());
            for record in &trial.checkpoints {
                let oa = record.oa.unwrap();
                assert!((0.0..=1.0).contains(&oa));
            }
            assert!(trial.selected.contains_key("oa"));
        }
    }

    #[test]
    fn divergent_training_is_recorded_not_propagated() {
        let cfg = {
            let mut c = tiny_config("upu");
            c.loss = LossKind::Squared;
            c
        };
        let source = prepare_source(&cfg).unwrap();
        let data = prepare_split(&cfg, &source, 0).unwrap();
        let draw = HyperparamDraw {
            learning_rate: 1e150,
            batch_size: 32,
            momentum: 0.9,
            weight_decay: 0.0,
            nnpu_tolerance: 0.0,
        };
        let trial = run_trial(&cfg, 0, 0, 0, &data, &draw);
        let reason = trial.failed.expect("trial should fail");
        assert!(reason.contains("diverged"), "reason: {reason}");
        assert!(trial.checkpoints.is_empty());
    }

    #[test]
    fn single_class_test_set_fails_the_trial_only() {
        let cfg = tiny_config("upu");
        let source = prepare_source(&cfg).unwrap();
        let mut data = prepare_split(&cfg, &source, 0).unwrap();
        let n = data.test.n();
        data.test = LabeledDataset::new(
            Array2::zeros((n, 2)),
            Array1::from_elem(n, 1i8),
        )
        .unwrap();
        let draw = sample_hyperparams(&mut ChaCha8Rng::seed_from_u64(5));
        let trial = run_trial(&cfg, 0, 0, 0, &data, &draw);
        assert!(trial.failed.unwrap().contains("single-class"));
    }

    #[test]
    fn pusb_checkpoints_differ_from_sign_thresholding() {
        let cfg = tiny_config("upu,pusb");
        let out = run_benchmark(&cfg).unwrap();
        let upu = &out.trials[0];
        let pusb = out
            .trials
            .iter()
            .find(|t| t.algorithm == "pusb" && t.split_index == 0 && t.draw_index == 0)
            .unwrap();
        for (a, b) in upu.checkpoints.iter().zip(&pusb.checkpoints) {
            assert_eq!(a.pauc, b.pauc, "rank criterion is threshold-free");
            assert_eq!(a.test_auc, b.test_auc);
        }
        let any_threshold_difference = upu
            .checkpoints
            .iter()
            .zip(&pusb.checkpoints)
            .any(|(a, b)| a.pa != b.pa || a.test_acc != b.test_acc);
        assert!(any_threshold_difference);
    }

    #[test]
    fn sweep_tags_every_trial_and_skips_plain_summary() {
        let mut cfg = tiny_config("upu");
        cfg.sweep = Some(crate::harness::SweepSpec {
            key: crate::harness::SweepKey::C,
            values: vec![0.3, 0.7],
        });
        let out = run_benchmark(&cfg).unwrap();
        assert_eq!(out.trials.len(), 2 * 1 * 2 * 2);
        assert!(out.summary.is_none());
        assert_eq!(out.sweeps.len(), 1);
        for trial in &out.trials {
            let point = trial.sweep.as_ref().unwrap();
            assert_eq!(point.name, "c");
            assert!(point.value == 0.3 || point.value == 0.7);
        }
    }
}
