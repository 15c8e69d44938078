//! PU risk estimators and the training loop built on them.
//!
//! The estimator family shares one decomposition: a `positive_part`
//! `(π/p)·Σ_P ℓ(f,+1)` plus a `negative_part` built from `ℓ(f,-1)` terms.
//!
//! - [`upu_risk`] is the unbiased two-sample estimator
//!   `(π/p)·Σ_P [ℓ(f,+1) - ℓ(f,-1)] + (1/u)·Σ_U ℓ(f,-1)`. Its mean over TS
//!   resamples is the true risk; over one-sample (OS) data it acquires a
//!   bias with the closed form computed by [`expected_bias_oracle`].
//! - [`calibrated_risk`] reweights for the OS setting:
//!   `(π/p)·Σ_P [ℓ(f,+1) + (c-1)·ℓ(f,-1)] + ((1-cπ)/u)·Σ_U ℓ(f,-1)`.
//!   With `c = p/(π(p+u))` it coincides exactly with [`upu_risk`] evaluated
//!   on `(P, U ∪ P)`, which is why [`train_ts`] implements calibration by
//!   replenishing each unlabeled mini-batch with the positive mini-batch.
//! - [`nnpu_risk`] clamps the negative part at zero to fight overfitting;
//!   nnPU-GA additionally takes a gradient-ascent step on the negative part
//!   when it goes negative. The ascent mechanism is our reconstruction: the
//!   variant is conventionally named but nowhere given as a formula, so we
//!   ascend on the negative-part risk scaled by `ascent_scale` (default 1)
//!   whenever it falls below `-tolerance`.
//!
//! [`pusb_threshold`] turns scores into hard predictions by quantile: the
//! top `⌊π·m⌋` scores (plus ties at the cut) are predicted positive.

use ndarray::{concatenate, Array2, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{os_prior, synthesize_class, DataError, GaussianMixtureSpec, PuDataset};
use crate::model::{
    score_batch, sgd_step, weighted_loss_and_grad, Classifier, LossKind, ModelError,
    OptimizerState,
};

#[derive(Debug, Error)]
pub enum RiskError {
    #[error("invalid batch: {0}")]
    InvalidBatch(String),
    #[error("calibrated estimator requires a label frequency")]
    MissingLabelFrequency,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("objective diverged at iteration {iteration}")]
    Diverged { iteration: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// One mini-batch (or a whole dataset) as seen by a risk estimator.
///
/// `label_frequency` admits any positive finite value, not just `(0, 1]`:
/// the unclipped estimate `p/(π(p+u))` can exceed 1 on small batches and the
/// equivalence with the replenished unbiased estimator holds for the raw
/// value, so it is applied verbatim.
#[derive(Debug, Clone, Copy)]
pub struct RiskBatch<'a> {
    positive: ArrayView2<'a, f64>,
    unlabeled: ArrayView2<'a, f64>,
    prior: f64,
    label_frequency: Option<f64>,
}

impl<'a> RiskBatch<'a> {
    pub fn new(
        positive: ArrayView2<'a, f64>,
        unlabeled: ArrayView2<'a, f64>,
        prior: f64,
        label_frequency: Option<f64>,
    ) -> Result<Self, RiskError> {
        if positive.nrows() == 0 || unlabeled.nrows() == 0 {
            return Err(RiskError::InvalidBatch(format!(
                "need at least one positive and one unlabeled row, got {} and {}",
                positive.nrows(),
                unlabeled.nrows()
            )));
        }
        if positive.ncols() != unlabeled.ncols() {
            return Err(RiskError::InvalidBatch(format!(
                "positive dim {} vs unlabeled dim {}",
                positive.ncols(),
                unlabeled.ncols()
            )));
        }
        if !(prior > 0.0 && prior < 1.0) {
            return Err(RiskError::InvalidBatch(format!(
                "prior must lie in (0, 1), got {prior}"
            )));
        }
        if let Some(c) = label_frequency {
            if !(c > 0.0 && c.is_finite()) {
                return Err(RiskError::InvalidBatch(format!(
                    "label frequency must be positive and finite, got {c}"
                )));
            }
        }
        Ok(Self {
            positive,
            unlabeled,
            prior,
            label_frequency,
        })
    }

    /// View a whole dataset as one batch, carrying its prior and label
    /// frequency.
    pub fn from_dataset(pu: &'a PuDataset) -> Self {
        Self {
            positive: pu.positives().view(),
            unlabeled: pu.unlabeled().view(),
            prior: pu.prior(),
            label_frequency: pu.label_frequency(),
        }
    }

    pub fn n_p(&self) -> usize {
        self.positive.nrows()
    }

    pub fn n_u(&self) -> usize {
        self.unlabeled.nrows()
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn label_frequency(&self) -> Option<f64> {
        self.label_frequency
    }
}

/// Estimator value split into the parts the non-negative correction needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskValue {
    pub total: f64,
    /// `(π/p)·Σ_P ℓ(f,+1)`, non-negative for non-negative losses.
    pub positive_part: f64,
    /// Everything else; the quantity whose sign the nnPU family monitors.
    pub negative_part: f64,
}

impl RiskValue {
    fn from_parts(positive_part: f64, negative_part: f64) -> Self {
        Self {
            total: positive_part + negative_part,
            positive_part,
            negative_part,
        }
    }
}

/// Base estimator selecting the per-batch objective and correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum BaseEstimator {
    #[serde(rename = "upu")]
    UPu,
    #[serde(rename = "nnpu")]
    NnPu { tolerance: f64 },
    #[serde(rename = "nnpu-ga")]
    NnPuGa { tolerance: f64, ascent_scale: f64 },
}

/// Full estimator selection for a training run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorKind {
    pub base: BaseEstimator,
    /// Replenish each unlabeled mini-batch with the positive mini-batch.
    pub calibrated: bool,
    /// Evaluate the calibrated formula with the per-batch estimated label
    /// frequency instead of replenishing; the two are algebraically equal,
    /// and this flag exists to verify that inside the training loop.
    pub direct_calibration: bool,
}

impl EstimatorKind {
    pub fn new(base: BaseEstimator, calibrated: bool, direct_calibration: bool) -> Result<Self, RiskError> {
        if direct_calibration && !matches!(base, BaseEstimator::UPu) {
            return Err(RiskError::InvalidParameter(
                "direct calibrated evaluation is defined for the unbiased base only".into(),
            ));
        }
        if direct_calibration && calibrated {
            return Err(RiskError::InvalidParameter(
                "direct calibrated evaluation replaces replenishment; pick one".into(),
            ));
        }
        Ok(Self {
            base,
            calibrated,
            direct_calibration,
        })
    }

    pub fn upu() -> Self {
        Self {
            base: BaseEstimator::UPu,
            calibrated: false,
            direct_calibration: false,
        }
    }

    pub fn upu_calibrated() -> Self {
        Self {
            calibrated: true,
            ..Self::upu()
        }
    }

    pub fn direct_calibrated() -> Self {
        Self {
            direct_calibration: true,
            ..Self::upu()
        }
    }

    pub fn nnpu(tolerance: f64) -> Self {
        Self {
            base: BaseEstimator::NnPu { tolerance },
            calibrated: false,
            direct_calibration: false,
        }
    }

    pub fn nnpu_ga(tolerance: f64, ascent_scale: f64) -> Self {
        Self {
            base: BaseEstimator::NnPuGa {
                tolerance,
                ascent_scale,
            },
            calibrated: false,
            direct_calibration: false,
        }
    }

    pub fn with_calibration(mut self, on: bool) -> Self {
        self.calibrated = on;
        self
    }
}

/// Loss sums over a matrix: `(Σ ℓ(f(x),+1), Σ ℓ(f(x),-1))` in one scoring
/// pass.
fn loss_sums(
    classifier: &Classifier,
    x: ArrayView2<f64>,
    loss: LossKind,
) -> Result<(f64, f64), RiskError> {
    let scores = score_batch(classifier, x)?;
    let mut plus = 0.0;
    let mut minus = 0.0;
    for &z in scores.iter() {
        plus += loss.value(z, 1);
        minus += loss.value(z, -1);
    }
    if plus.is_finite() && minus.is_finite() {
        Ok((plus, minus))
    } else {
        Err(ModelError::NonFinite("loss sum").into())
    }
}

fn combine_upu(
    prior: f64,
    p: f64,
    u: f64,
    sum_pos_plus: f64,
    sum_pos_minus: f64,
    sum_unl_minus: f64,
) -> RiskValue {
    let positive_part = prior / p * sum_pos_plus;
    let negative_part = sum_unl_minus / u - prior / p * sum_pos_minus;
    RiskValue::from_parts(positive_part, negative_part)
}

fn combine_calibrated(
    prior: f64,
    c: f64,
    p: f64,
    u: f64,
    sum_pos_plus: f64,
    sum_pos_minus: f64,
    sum_unl_minus: f64,
) -> RiskValue {
    let positive_part = prior / p * sum_pos_plus;
    let negative_part =
        prior * (c - 1.0) / p * sum_pos_minus + (1.0 - c * prior) / u * sum_unl_minus;
    RiskValue::from_parts(positive_part, negative_part)
}

/// Unbiased two-sample risk estimate of a classifier on one batch.
pub fn upu_risk(
    batch: &RiskBatch,
    classifier: &Classifier,
    loss: LossKind,
) -> Result<RiskValue, RiskError> {
    let (sum_pos_plus, sum_pos_minus) = loss_sums(classifier, batch.positive, loss)?;
    let (_, sum_unl_minus) = loss_sums(classifier, batch.unlabeled, loss)?;
    Ok(combine_upu(
        batch.prior,
        batch.n_p() as f64,
        batch.n_u() as f64,
        sum_pos_plus,
        sum_pos_minus,
        sum_unl_minus,
    ))
}

/// Calibrated risk estimate for the OS setting; requires the batch to carry
/// a label frequency.
pub fn calibrated_risk(
    batch: &RiskBatch,
    classifier: &Classifier,
    loss: LossKind,
) -> Result<RiskValue, RiskError> {
    let c = batch.label_frequency.ok_or(RiskError::MissingLabelFrequency)?;
    let (sum_pos_plus, sum_pos_minus) = loss_sums(classifier, batch.positive, loss)?;
    let (_, sum_unl_minus) = loss_sums(classifier, batch.unlabeled, loss)?;
    Ok(combine_calibrated(
        batch.prior,
        c,
        batch.n_p() as f64,
        batch.n_u() as f64,
        sum_pos_plus,
        sum_pos_minus,
        sum_unl_minus,
    ))
}

/// Non-negative risk estimate. The negative part
/// `A = (1/u)·Σ_U ℓ(f,-1) - (π/p)·Σ_P ℓ(f,-1)` passes through while
/// `A ≥ -tolerance` and is clamped to zero otherwise, so the reported total
/// never falls below the positive part.
pub fn nnpu_risk(
    batch: &RiskBatch,
    classifier: &Classifier,
    loss: LossKind,
    tolerance: f64,
) -> Result<(RiskValue, bool), RiskError> {
    let upu = upu_risk(batch, classifier, loss)?;
    if upu.negative_part >= -tolerance {
        Ok((upu, false))
    } else {
        Ok((
            RiskValue::from_parts(upu.positive_part, upu.negative_part.max(0.0)),
            true,
        ))
    }
}

/// Multiset union of the two batches: unlabeled rows first, then the
/// positive rows, no deduplication.
pub fn replenish_batch(
    p_batch: ArrayView2<f64>,
    u_batch: ArrayView2<f64>,
) -> Result<Array2<f64>, RiskError> {
    if p_batch.ncols() != u_batch.ncols() {
        return Err(RiskError::InvalidBatch(format!(
            "positive dim {} vs unlabeled dim {}",
            p_batch.ncols(),
            u_batch.ncols()
        )));
    }
    concatenate(Axis(0), &[u_batch, p_batch])
        .map_err(|e| RiskError::InvalidBatch(format!("concatenation failed: {e}")))
}

/// Accumulate `weight · Σ_rows ℓ(f(x), sign)` and its gradient into
/// `(value, grad)`.
fn accumulate_term(
    classifier: &Classifier,
    x: ArrayView2<f64>,
    sign: i8,
    weight: f64,
    loss: LossKind,
    value: &mut f64,
    grad: &mut [f64],
) -> Result<(), RiskError> {
    let m = x.nrows();
    let (v, g) = weighted_loss_and_grad(classifier, x, &vec![sign; m], &vec![weight; m], loss)?;
    *value += v;
    for (acc, gi) in grad.iter_mut().zip(&g) {
        *acc += gi;
    }
    Ok(())
}

/// Objective value, gradient, and correction flag for one mini-batch under
/// the given estimator kind. The positive/unlabeled views are the raw
/// fetched batches; replenishment happens here.
fn batch_objective(
    kind: &EstimatorKind,
    positive: ArrayView2<f64>,
    unlabeled: ArrayView2<f64>,
    prior: f64,
    classifier: &Classifier,
    loss: LossKind,
) -> Result<(f64, Vec<f64>, bool), RiskError> {
    let p = positive.nrows() as f64;
    let n_params = classifier.parameters().len();

    if kind.direct_calibration {
        let u = unlabeled.nrows() as f64;
        let c_hat = p / (prior * (p + u));
        let mut value = 0.0;
        let mut grad = vec![0.0; n_params];
        accumulate_term(classifier, positive, 1, prior / p, loss, &mut value, &mut grad)?;
        accumulate_term(
            classifier,
            positive,
            -1,
            prior * (c_hat - 1.0) / p,
            loss,
            &mut value,
            &mut grad,
        )?;
        accumulate_term(
            classifier,
            unlabeled,
            -1,
            (1.0 - c_hat * prior) / u,
            loss,
            &mut value,
            &mut grad,
        )?;
        return Ok((value, grad, false));
    }

    let replenished;
    let unlabeled = if kind.calibrated {
        replenished = replenish_batch(positive, unlabeled)?;
        replenished.view()
    } else {
        unlabeled
    };
    let u = unlabeled.nrows() as f64;

    let mut pos_value = 0.0;
    let mut pos_grad = vec![0.0; n_params];
    accumulate_term(classifier, positive, 1, prior / p, loss, &mut pos_value, &mut pos_grad)?;

    let mut neg_value = 0.0;
    let mut neg_grad = vec![0.0; n_params];
    accumulate_term(
        classifier,
        positive,
        -1,
        -prior / p,
        loss,
        &mut neg_value,
        &mut neg_grad,
    )?;
    accumulate_term(classifier, unlabeled, -1, 1.0 / u, loss, &mut neg_value, &mut neg_grad)?;

    let add = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };

    match kind.base {
        BaseEstimator::UPu => Ok((pos_value + neg_value, add(&pos_grad, &neg_grad), false)),
        BaseEstimator::NnPu { tolerance } => {
            if neg_value >= -tolerance {
                Ok((pos_value + neg_value, add(&pos_grad, &neg_grad), false))
            } else {
                Ok((pos_value, pos_grad, true))
            }
        }
        BaseEstimator::NnPuGa {
            tolerance,
            ascent_scale,
        } => {
            if neg_value >= -tolerance {
                Ok((pos_value + neg_value, add(&pos_grad, &neg_grad), false))
            } else {
                let ascent: Vec<f64> = neg_grad.iter().map(|g| -ascent_scale * g).collect();
                Ok((pos_value, ascent, true))
            }
        }
    }
}

/// One nnPU-GA update in place: a descent step on the full objective while
/// the negative part stays above `-tolerance`, otherwise an ascent step on
/// the negative part alone. Returns the pre-step risk value and whether the
/// ascent branch fired.
pub fn nnpu_ga_step(
    batch: &RiskBatch,
    classifier: &mut Classifier,
    opt: &mut OptimizerState,
    loss: LossKind,
    tolerance: f64,
    ascent_scale: f64,
) -> Result<(RiskValue, bool), RiskError> {
    let kind = EstimatorKind::nnpu_ga(tolerance, ascent_scale);
    let (_, grad, corrected) =
        batch_objective(&kind, batch.positive, batch.unlabeled, batch.prior, classifier, loss)?;
    let (risk, _) = nnpu_risk(batch, classifier, loss, tolerance)?;
    sgd_step(classifier, &grad, opt)?;
    Ok((risk, corrected))
}

/// Mini-batch schedule for [`train_ts`]. `eval_every = 0` disables the
/// observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainSchedule {
    pub iterations: usize,
    pub batch_p: usize,
    pub batch_u: usize,
    pub eval_every: usize,
}

/// Objective value recorded at one training iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub objective: f64,
    pub corrected: bool,
}

/// Outcome of a training run: final classifier plus the per-iteration
/// objective log.
#[derive(Debug, Clone)]
pub struct TrainRun {
    pub classifier: Classifier,
    pub log: Vec<IterationRecord>,
}

/// Epoch-wise shuffled index stream. A fetch that exhausts the pool
/// reshuffles and continues, so every batch has its full size.
struct BatchCycler {
    order: Vec<usize>,
    cursor: usize,
}

impl BatchCycler {
    fn new(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
            cursor: n,
        }
    }

    fn fetch<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R, out: &mut Vec<usize>) {
        out.clear();
        while out.len() < k {
            if self.cursor == self.order.len() {
                self.order.shuffle(rng);
                self.cursor = 0;
            }
            let take = (k - out.len()).min(self.order.len() - self.cursor);
            out.extend_from_slice(&self.order[self.cursor..self.cursor + take]);
            self.cursor += take;
        }
    }
}

/// Mini-batch training over a PU dataset.
///
/// Per epoch each pool is shuffled; per iteration one mini-batch is fetched
/// from each pool (positives first), the estimator objective and gradient
/// are computed (with replenishment when `kind.calibrated`), and one SGD
/// step is taken. The observer runs every `eval_every` iterations with the
/// current classifier. Deterministic given the generator state; a
/// non-finite objective or update aborts with [`RiskError::Diverged`].
#[allow(clippy::too_many_arguments)]
pub fn train_ts<R, F>(
    kind: EstimatorKind,
    pu: &PuDataset,
    classifier: Classifier,
    opt: OptimizerState,
    loss: LossKind,
    schedule: &TrainSchedule,
    rng: &mut R,
    mut observer: F,
) -> Result<TrainRun, RiskError>
where
    R: Rng + ?Sized,
    F: FnMut(usize, &Classifier),
{
    EstimatorKind::new(kind.base, kind.calibrated, kind.direct_calibration)?;
    if schedule.batch_p == 0 || schedule.batch_u == 0 {
        return Err(RiskError::InvalidParameter(
            "batch sizes must be at least 1".into(),
        ));
    }
    if schedule.batch_p > pu.n_p() || schedule.batch_u > pu.n_u() {
        return Err(RiskError::InvalidParameter(format!(
            "batch sizes {}/{} exceed pool sizes {}/{}",
            schedule.batch_p,
            schedule.batch_u,
            pu.n_p(),
            pu.n_u()
        )));
    }

    let mut classifier = classifier;
    let mut opt = opt;
    let mut log = Vec::with_capacity(schedule.iterations);
    let mut cycler_p = BatchCycler::new(pu.n_p());
    let mut cycler_u = BatchCycler::new(pu.n_u());
    let mut idx_p = Vec::with_capacity(schedule.batch_p);
    let mut idx_u = Vec::with_capacity(schedule.batch_u);
    let prior = pu.prior();

    for iteration in 1..=schedule.iterations {
        cycler_p.fetch(schedule.batch_p, rng, &mut idx_p);
        cycler_u.fetch(schedule.batch_u, rng, &mut idx_u);
        let pb = pu.positives().select(Axis(0), &idx_p);
        let ub = pu.unlabeled().select(Axis(0), &idx_u);
        let step = batch_objective(&kind, pb.view(), ub.view(), prior, &classifier, loss)
            .and_then(|(value, grad, corrected)| {
                sgd_step(&mut classifier, &grad, &mut opt)?;
                Ok((value, corrected))
            });
        let (objective, corrected) = match step {
            Ok(ok) => ok,
            Err(RiskError::Model(ModelError::NonFinite(_))) => {
                return Err(RiskError::Diverged { iteration })
            }
            Err(other) => return Err(other),
        };
        log.push(IterationRecord {
            iteration,
            objective,
            corrected,
        });
        if schedule.eval_every > 0 && iteration % schedule.eval_every == 0 {
            observer(iteration, &classifier);
        }
    }
    Ok(TrainRun { classifier, log })
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
}

fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

fn class_loss_samples<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    label: i8,
    sign: i8,
    classifier: &Classifier,
    loss: LossKind,
    mc_n: usize,
    rng: &mut R,
) -> Result<Vec<f64>, RiskError> {
    let x = synthesize_class(spec, label, mc_n, rng)?;
    let scores = score_batch(classifier, x.view())?;
    Ok(scores.iter().map(|&z| loss.value(z, sign)).collect())
}

/// Monte-Carlo estimate of the true risk
/// `R(f) = π·E_pos[ℓ(f,+1)] + (1-π)·E_neg[ℓ(f,-1)]` using `mc_n` draws per
/// class-conditional.
pub fn monte_carlo_risk<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    classifier: &Classifier,
    loss: LossKind,
    mc_n: usize,
    rng: &mut R,
) -> Result<MonteCarloEstimate, RiskError> {
    if mc_n < 2 {
        return Err(RiskError::InvalidParameter(
            "Monte-Carlo sample count must be at least 2".into(),
        ));
    }
    let pos = class_loss_samples(spec, 1, 1, classifier, loss, mc_n, rng)?;
    let neg = class_loss_samples(spec, -1, -1, classifier, loss, mc_n, rng)?;
    let (mean_pos, var_pos) = mean_and_variance(&pos);
    let (mean_neg, var_neg) = mean_and_variance(&neg);
    let pi = spec.prior;
    let n = mc_n as f64;
    Ok(MonteCarloEstimate {
        value: pi * mean_pos + (1.0 - pi) * mean_neg,
        std_error: (pi * pi * var_pos / n + (1.0 - pi) * (1.0 - pi) * var_neg / n).sqrt(),
    })
}

/// Monte-Carlo estimate of the closed-form expected bias of the unbiased
/// estimator under OS sampling with label frequency `c`:
/// `(π̄ - π)·(E_pos[ℓ(f,-1)] - E_neg[ℓ(f,-1)])` where `π̄` is the shifted
/// unlabeled prior.
pub fn expected_bias_oracle<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    classifier: &Classifier,
    loss: LossKind,
    c: f64,
    mc_n: usize,
    rng: &mut R,
) -> Result<MonteCarloEstimate, RiskError> {
    if mc_n < 10_000 {
        return Err(RiskError::InvalidParameter(format!(
            "bias oracle needs at least 10000 draws per class, got {mc_n}"
        )));
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(RiskError::InvalidParameter(format!(
            "label frequency must lie in (0, 1], got {c}"
        )));
    }
    let pos = class_loss_samples(spec, 1, -1, classifier, loss, mc_n, rng)?;
    let neg = class_loss_samples(spec, -1, -1, classifier, loss, mc_n, rng)?;
    let (mean_pos, var_pos) = mean_and_variance(&pos);
    let (mean_neg, var_neg) = mean_and_variance(&neg);
    let shift = os_prior(spec.prior, c) - spec.prior;
    let n = mc_n as f64;
    Ok(MonteCarloEstimate {
        value: shift * (mean_pos - mean_neg),
        std_error: shift.abs() * ((var_pos + var_neg) / n).sqrt(),
    })
}

/// Quantile decision threshold: with `k = ⌊π·m⌋`, returns the score value
/// such that predicting positive on `score ≥ threshold` selects the top `k`
/// scores plus any ties at the cut. `k = 0` yields `+∞` (nothing positive).
pub fn pusb_threshold(scores: &[f64], prior: f64) -> Result<f64, RiskError> {
    if scores.is_empty() {
        return Err(RiskError::InvalidParameter("empty score vector".into()));
    }
    if !(prior > 0.0 && prior < 1.0) {
        return Err(RiskError::InvalidParameter(format!(
            "prior must lie in (0, 1), got {prior}"
        )));
    }
    if !scores.iter().all(|s| s.is_finite()) {
        return Err(RiskError::InvalidParameter(
            "scores contain a non-finite value".into(),
        ));
    }
    let m = scores.len();
    let k = (prior * m as f64).floor() as usize;
    if k == 0 {
        return Ok(f64::INFINITY);
    }
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[m - k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{make_os_pu, make_ts_pu};
    use crate::model::Architecture;
    use ndarray::array;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec_1d() -> GaussianMixtureSpec {
        GaussianMixtureSpec::new(vec![1.0], vec![-1.0], 1.0, 1.0, 0.5).unwrap()
    }

    fn random_batch_views(
        seed: u64,
        p: usize,
        u: usize,
        d: usize,
    ) -> (Array2<f64>, Array2<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pos = Array2::from_shape_fn((p, d), |_| rng.random_range(-2.0..2.0));
        let unl = Array2::from_shape_fn((u, d), |_| rng.random_range(-2.0..2.0));
        (pos, unl)
    }

    fn random_classifier(seed: u64, d: usize) -> Classifier {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        Classifier::init_random(Architecture::Linear { dim: d }, &mut rng).unwrap()
    }

    #[test]
    fn upu_hand_example() {
        // π=0.5, p=1, u=2 with prescribed loss sums: Σ_P ℓ(+1)=0.2,
        // Σ_P ℓ(-1)=0.9, Σ_U ℓ(-1)=0.3+0.5.
        let v = combine_upu(0.5, 1.0, 2.0, 0.2, 0.9, 0.8);
        assert!((v.total - 0.05).abs() < 1e-15, "total = {}", v.total);
        assert!((v.positive_part - 0.1).abs() < 1e-15);
        assert!((v.total - v.positive_part - v.negative_part).abs() < 1e-12);
    }

    #[test]
    fn upu_of_zero_scorer_with_logistic_is_ln_two() {
        let (pos, unl) = random_batch_views(1, 5, 9, 3);
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, None).unwrap();
        let zero = Classifier::zeroed(Architecture::Linear { dim: 3 }).unwrap();
        let v = upu_risk(&batch, &zero, LossKind::Logistic).unwrap();
        assert!((v.total - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn upu_sigmoid_identity() {
        // With ℓ(z,+1)+ℓ(z,-1)=1 the positive-risk terms collapse:
        // total = (2π/p)·Σ_P ℓ(+1) + (1/u)·Σ_U ℓ(-1) − π.
        for seed in 0..10 {
            let (pos, unl) = random_batch_views(seed, 4, 7, 2);
            let prior = 0.35;
            let batch = RiskBatch::new(pos.view(), unl.view(), prior, None).unwrap();
            let c = random_classifier(seed, 2);
            let v = upu_risk(&batch, &c, LossKind::Sigmoid).unwrap();
            let (sum_pp, _) = loss_sums(&c, pos.view(), LossKind::Sigmoid).unwrap();
            let (_, sum_um) = loss_sums(&c, unl.view(), LossKind::Sigmoid).unwrap();
            let direct = 2.0 * prior / 4.0 * sum_pp + sum_um / 7.0 - prior;
            assert!((v.total - direct).abs() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn calibrated_with_c_one_is_supervised_weighting() {
        let (pos, unl) = random_batch_views(3, 6, 10, 2);
        let prior = 0.4;
        let batch = RiskBatch::new(pos.view(), unl.view(), prior, Some(1.0)).unwrap();
        let c = random_classifier(3, 2);
        let v = calibrated_risk(&batch, &c, LossKind::Logistic).unwrap();
        let (sum_pp, _) = loss_sums(&c, pos.view(), LossKind::Logistic).unwrap();
        let (_, sum_um) = loss_sums(&c, unl.view(), LossKind::Logistic).unwrap();
        let direct = prior / 6.0 * sum_pp + (1.0 - prior) / 10.0 * sum_um;
        assert!((v.total - direct).abs() < 1e-12);
    }

    #[test]
    fn calibrated_single_pair_with_unit_c() {
        // π=0.5, p=u=1 gives the estimated c = 1/(0.5·2) = 1 and the value
        // 0.5·ℓ(x₁,+1) + 0.5·ℓ(x₂,-1).
        let pos = array![[0.7]];
        let unl = array![[-0.4]];
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, Some(1.0)).unwrap();
        let c = Classifier::new(Architecture::Linear { dim: 1 }, vec![1.0, 0.0]).unwrap();
        let v = calibrated_risk(&batch, &c, LossKind::Logistic).unwrap();
        let expect = 0.5 * LossKind::Logistic.value(0.7, 1) + 0.5 * LossKind::Logistic.value(-0.4, -1);
        assert!((v.total - expect).abs() < 1e-15);
    }

    #[test]
    fn calibrated_missing_c_errors() {
        let (pos, unl) = random_batch_views(4, 2, 3, 2);
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, None).unwrap();
        let c = random_classifier(4, 2);
        assert!(matches!(
            calibrated_risk(&batch, &c, LossKind::Logistic),
            Err(RiskError::MissingLabelFrequency)
        ));
    }

    #[test]
    fn replenished_equivalence_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..25 {
            let p = rng.random_range(1..20);
            let u = rng.random_range(1..40);
            let d = rng.random_range(1..5);
            let prior = rng.random_range(0.05..0.95);
            let (pos, unl) = random_batch_views(1000 + trial, p, u, d);
            let c_hat = p as f64 / (prior * (p + u) as f64);
            let cal_batch = RiskBatch::new(pos.view(), unl.view(), prior, Some(c_hat)).unwrap();
            let clf = random_classifier(trial, d);
            for loss in [LossKind::Logistic, LossKind::Sigmoid, LossKind::Squared] {
                let cal = calibrated_risk(&cal_batch, &clf, loss).unwrap();
                let merged = replenish_batch(pos.view(), unl.view()).unwrap();
                let upu_batch =
                    RiskBatch::new(pos.view(), merged.view(), prior, None).unwrap();
                let upu = upu_risk(&upu_batch, &clf, loss).unwrap();
                let rel = (cal.total - upu.total).abs() / (1.0 + cal.total.abs());
                assert!(rel <= 1e-9, "trial {trial} {loss:?}: rel = {rel}");
            }
        }
    }

    #[test]
    fn nnpu_positive_branch_matches_upu_exactly() {
        let (pos, unl) = random_batch_views(7, 5, 8, 2);
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.3, None).unwrap();
        let zero = Classifier::zeroed(Architecture::Linear { dim: 2 }).unwrap();
        // At zero scores A = (1-π)·ℓ(0,-1) > 0.
        let upu = upu_risk(&batch, &zero, LossKind::Logistic).unwrap();
        let (nn, corrected) = nnpu_risk(&batch, &zero, LossKind::Logistic, 0.0).unwrap();
        assert!(!corrected);
        assert_eq!(nn, upu);
    }

    /// P scored strongly positive and U strongly negative makes
    /// A = (1/u)Σ_U ℓ(-1) − (π/p)Σ_P ℓ(-1) negative.
    fn clamping_setup() -> (Array2<f64>, Array2<f64>, Classifier) {
        let pos = array![[3.0], [2.5]];
        let unl = array![[-3.0], [-2.5], [-4.0]];
        let clf = Classifier::new(Architecture::Linear { dim: 1 }, vec![1.0, 0.0]).unwrap();
        (pos, unl, clf)
    }

    #[test]
    fn nnpu_clamps_and_flags() {
        let (pos, unl, clf) = clamping_setup();
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, None).unwrap();
        let upu = upu_risk(&batch, &clf, LossKind::Logistic).unwrap();
        assert!(upu.negative_part < 0.0, "setup failed: A = {}", upu.negative_part);
        let (nn, corrected) = nnpu_risk(&batch, &clf, LossKind::Logistic, 0.0).unwrap();
        assert!(corrected);
        assert_eq!(nn.total, nn.positive_part);
        assert_eq!(nn.negative_part, 0.0);
        // A wide tolerance lets the same batch pass uncorrected.
        let (wide, corrected_wide) =
            nnpu_risk(&batch, &clf, LossKind::Logistic, 10.0).unwrap();
        assert!(!corrected_wide);
        assert_eq!(wide, upu);
    }

    #[test]
    fn nnpu_dominates_upu_with_equality_iff_uncorrected() {
        for seed in 0..40 {
            let (pos, unl) = random_batch_views(seed, 3, 6, 2);
            let batch = RiskBatch::new(pos.view(), unl.view(), 0.6, None).unwrap();
            let clf = random_classifier(seed, 2);
            let upu = upu_risk(&batch, &clf, LossKind::Sigmoid).unwrap();
            let (nn, corrected) = nnpu_risk(&batch, &clf, LossKind::Sigmoid, 0.0).unwrap();
            assert!(nn.total >= upu.total, "seed {seed}");
            assert!(nn.total >= nn.positive_part, "seed {seed}");
            assert_eq!(nn.total == upu.total, !corrected, "seed {seed}");
        }
    }

    #[test]
    fn replenish_concatenates_in_order() {
        let (pos, unl) = random_batch_views(11, 32, 64, 3);
        let merged = replenish_batch(pos.view(), unl.view()).unwrap();
        assert_eq!(merged.nrows(), 96);
        assert_eq!(merged.slice(ndarray::s![..64, ..]), unl);
        assert_eq!(merged.slice(ndarray::s![64.., ..]), pos);
        let bad = Array2::<f64>::zeros((2, 5));
        assert!(replenish_batch(pos.view(), bad.view()).is_err());
    }

    #[test]
    fn ga_step_matches_nnpu_descent_when_uncorrected() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pu = make_ts_pu(&spec, 40, 160, &mut rng).unwrap();
        let init = Classifier::zeroed(Architecture::Linear { dim: 1 }).unwrap();
        // Full-pool batches: without sampling noise the negative part stays
        // comfortably positive this early in training, so the two
        // estimators must walk the same path.
        let schedule = TrainSchedule {
            iterations: 50,
            batch_p: 40,
            batch_u: 160,
            eval_every: 0,
        };
        let run = |kind: EstimatorKind| {
            let opt = OptimizerState::new(0.01, 0.9, 0.0, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(123);
            train_ts(kind, &pu, init.clone(), opt, LossKind::Logistic, &schedule, &mut rng, |_, _| {})
                .unwrap()
        };
        let nn = run(EstimatorKind::nnpu(0.0));
        let ga = run(EstimatorKind::nnpu_ga(0.0, 1.0));
        assert!(nn.log.iter().all(|r| !r.corrected), "clamp fired; setup invalid");
        assert_eq!(nn.classifier, ga.classifier);
    }

    #[test]
    fn ga_ascent_raises_negative_part() {
        let (pos, unl, clf) = clamping_setup();
        for lr in [1e-4, 1e-3, 1e-2] {
            let mut c = clf.clone();
            let mut opt = OptimizerState::new(lr, 0.0, 0.0, 2).unwrap();
            let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, None).unwrap();
            let before = upu_risk(&batch, &c, LossKind::Logistic).unwrap().negative_part;
            let (_, corrected) =
                nnpu_ga_step(&batch, &mut c, &mut opt, LossKind::Logistic, 0.0, 1.0).unwrap();
            assert!(corrected);
            let after = upu_risk(&batch, &c, LossKind::Logistic).unwrap().negative_part;
            assert!(after > before, "lr {lr}: {before} -> {after}");
        }
    }

    #[test]
    fn ga_zero_scale_freezes_parameters_on_ascent_branch() {
        let (pos, unl, clf) = clamping_setup();
        let mut c = clf.clone();
        let mut opt = OptimizerState::new(0.1, 0.0, 0.0, 2).unwrap();
        let batch = RiskBatch::new(pos.view(), unl.view(), 0.5, None).unwrap();
        let (_, corrected) =
            nnpu_ga_step(&batch, &mut c, &mut opt, LossKind::Logistic, 0.0, 0.0).unwrap();
        assert!(corrected);
        assert_eq!(c, clf);
    }

    #[test]
    fn train_zero_iterations_returns_initial() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pu = make_ts_pu(&spec, 10, 40, &mut rng).unwrap();
        let init = random_classifier(0, 1);
        let opt = OptimizerState::new(0.1, 0.0, 0.0, 2).unwrap();
        let schedule = TrainSchedule {
            iterations: 0,
            batch_p: 4,
            batch_u: 16,
            eval_every: 10,
        };
        let run = train_ts(
            EstimatorKind::upu(),
            &pu,
            init.clone(),
            opt,
            LossKind::Logistic,
            &schedule,
            &mut rng,
            |_, _| {},
        )
        .unwrap();
        assert_eq!(run.classifier, init);
        assert!(run.log.is_empty());
    }

    #[test]
    fn train_is_deterministic_and_observer_fires_on_schedule() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pu = make_ts_pu(&spec, 20, 80, &mut rng).unwrap();
        let init = random_classifier(1, 1);
        let schedule = TrainSchedule {
            iterations: 120,
            batch_p: 8,
            batch_u: 32,
            eval_every: 50,
        };
        let run = |seed: u64| {
            let mut marks = Vec::new();
            let opt = OptimizerState::new(0.05, 0.9, 0.0, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = train_ts(
                EstimatorKind::upu(),
                &pu,
                init.clone(),
                opt,
                LossKind::Logistic,
                &schedule,
                &mut rng,
                |it, _| marks.push(it),
            )
            .unwrap();
            (out.classifier, out.log, marks)
        };
        let (c1, log1, marks1) = run(42);
        let (c2, log2, _) = run(42);
        let (c3, _, _) = run(43);
        assert_eq!(c1, c2);
        assert_eq!(log1, log2);
        assert_ne!(c1, c3);
        assert_eq!(marks1, vec![50, 100]);
        assert_eq!(log1.len(), 120);
    }

    #[test]
    fn train_divergence_reports_iteration() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pu = make_ts_pu(&spec, 10, 40, &mut rng).unwrap();
        let init = random_classifier(2, 1);
        let opt = OptimizerState::new(1e150, 0.0, 0.0, 2).unwrap();
        let schedule = TrainSchedule {
            iterations: 100,
            batch_p: 4,
            batch_u: 16,
            eval_every: 0,
        };
        let err = train_ts(
            EstimatorKind::upu(),
            &pu,
            init,
            opt,
            LossKind::Squared,
            &schedule,
            &mut rng,
            |_, _| {},
        );
        assert!(matches!(err, Err(RiskError::Diverged { .. })), "{err:?}");
    }

    #[test]
    fn replenished_training_equals_direct_calibrated_evaluation() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pu = make_os_pu(&spec, 400, 0.5, &mut rng).unwrap();
        let init = random_classifier(3, 1);
        let schedule = TrainSchedule {
            iterations: 2000,
            batch_p: 8,
            batch_u: 32,
            eval_every: 0,
        };
        let run = |kind: EstimatorKind| {
            let opt = OptimizerState::new(0.05, 0.9, 0.0, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            train_ts(kind, &pu, init.clone(), opt, LossKind::Logistic, &schedule, &mut rng, |_, _| {})
                .unwrap()
        };
        let replenished = run(EstimatorKind::upu_calibrated());
        let direct = run(EstimatorKind::direct_calibrated());
        for (a, b) in replenished.log.iter().zip(&direct.log) {
            let rel = (a.objective - b.objective).abs() / (1.0 + a.objective.abs());
            assert!(rel <= 1e-9, "iteration {}: rel = {rel}", a.iteration);
        }
    }

    #[test]
    fn late_training_objective_approaches_monte_carlo_risk() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pu = make_ts_pu(&spec, 500, 2000, &mut rng).unwrap();
        let init = Classifier::zeroed(Architecture::Linear { dim: 1 }).unwrap();
        let opt = OptimizerState::new(0.02, 0.9, 0.0, 2).unwrap();
        let schedule = TrainSchedule {
            iterations: 3000,
            batch_p: 64,
            batch_u: 256,
            eval_every: 0,
        };
        let run = train_ts(
            EstimatorKind::upu(),
            &pu,
            init,
            opt,
            LossKind::Logistic,
            &schedule,
            &mut rng,
            |_, _| {},
        )
        .unwrap();
        let late: Vec<f64> = run.log[2500..].iter().map(|r| r.objective).collect();
        let late_mean = late.iter().sum::<f64>() / late.len() as f64;
        let mc = monte_carlo_risk(&spec, &run.classifier, LossKind::Logistic, 200_000, &mut rng)
            .unwrap();
        // Mini-batch objectives are noisy and correlated, so the bound is a
        // generous multiple of the Monte-Carlo SE plus finite-sample slack.
        assert!(
            (late_mean - mc.value).abs() < 0.03,
            "late mean {late_mean} vs MC {} ± {}",
            mc.value,
            mc.std_error
        );
    }

    #[test]
    fn bias_oracle_vanishes_when_shift_or_separation_vanishes() {
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let clf = random_classifier(5, 1);
        // c → 0 limit: shifted prior equals π, first factor ≈ 0.
        let near_ts = expected_bias_oracle(&spec, &clf, LossKind::Sigmoid, 1e-12, 10_000, &mut rng)
            .unwrap();
        assert!(near_ts.value.abs() < 1e-9, "bias = {}", near_ts.value);
        // Zero scorer: ℓ(0,-1) is the same constant on both classes.
        let zero = Classifier::zeroed(Architecture::Linear { dim: 1 }).unwrap();
        let flat = expected_bias_oracle(&spec, &zero, LossKind::Sigmoid, 0.5, 10_000, &mut rng)
            .unwrap();
        assert_eq!(flat.value, 0.0);
        assert!(expected_bias_oracle(&spec, &clf, LossKind::Sigmoid, 0.5, 100, &mut rng).is_err());
    }

    #[test]
    fn bias_oracle_sign_tracks_shift_direction() {
        // Positive-leaning classifier: ℓ(f,-1) larger on the positive class.
        // π̄ < π makes the bias negative (fewer positives hiding in U).
        let spec = spec_1d();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let clf = Classifier::new(Architecture::Linear { dim: 1 }, vec![1.0, 0.0]).unwrap();
        let bias = expected_bias_oracle(&spec, &clf, LossKind::Logistic, 0.5, 50_000, &mut rng)
            .unwrap();
        assert!(bias.value < 0.0, "bias = {}", bias.value);
        assert!(bias.value.abs() > 3.0 * bias.std_error);
    }

    #[test]
    fn pusb_threshold_examples() {
        // Top-1 of 4.
        let t = pusb_threshold(&[1.0, 2.0, 3.0, 4.0], 0.25).unwrap();
        assert_eq!(t, 4.0);
        let positives = [1.0, 2.0, 3.0, 4.0].iter().filter(|&&s| s >= t).count();
        assert_eq!(positives, 1);
        // All tied: everything is predicted positive under the ≥ convention.
        let t = pusb_threshold(&[0.7; 6], 0.5).unwrap();
        assert_eq!(t, 0.7);
        // ⌊π·m⌋ = 0 selects nothing.
        let t = pusb_threshold(&[5.0, 6.0], 0.3).unwrap();
        assert_eq!(t, f64::INFINITY);
        assert!(pusb_threshold(&[], 0.5).is_err());
        assert!(pusb_threshold(&[1.0, f64::NAN], 0.5).is_err());
    }

    #[test]
    fn pusb_fraction_on_random_scores() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let scores: Vec<f64> = (0..1000).map(|_| rng.random_range(-1.0..1.0)).collect();
        let t = pusb_threshold(&scores, 0.3).unwrap();
        let frac = scores.iter().filter(|&&s| s >= t).count() as f64 / 1000.0;
        assert_eq!(frac, 0.3);
    }

    #[test]
    fn estimator_kind_validation() {
        assert!(EstimatorKind::new(BaseEstimator::NnPu { tolerance: 0.0 }, false, true).is_err());
        assert!(EstimatorKind::new(BaseEstimator::UPu, true, true).is_err());
        assert!(EstimatorKind::new(BaseEstimator::UPu, false, true).is_ok());
    }

    proptest! {
        // Predicted-positive count lands in [⌊πm⌋, ⌊πm⌋ + ties at the cut].
        #[test]
        fn pusb_count_band(seed in 0u64..300, prior in 0.05f64..0.95, m in 1usize..120, dup in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let scores: Vec<f64> = (0..m).map(|_| f64::from(rng.random_range(-3i32..4)) / f64::from(dup as u32)).collect();
            let t = pusb_threshold(&scores, prior).unwrap();
            let k = (prior * m as f64).floor() as usize;
            let count = scores.iter().filter(|&&s| s >= t).count();
            if k == 0 {
                prop_assert_eq!(count, 0);
            } else {
                let ties = scores.iter().filter(|&&s| s == t).count();
                prop_assert!(count >= k && count <= k + ties, "count {} outside [{}, {}+{}]", count, k, k, ties);
            }
        }

        // RiskValue decomposition holds for every estimator.
        #[test]
        fn decomposition_identity(seed in 0u64..200) {
            let (pos, unl) = random_batch_views(seed, 4, 9, 2);
            let batch = RiskBatch::new(pos.view(), unl.view(), 0.45, Some(0.7)).unwrap();
            let clf = random_classifier(seed, 2);
            for v in [
                upu_risk(&batch, &clf, LossKind::Logistic).unwrap(),
                calibrated_risk(&batch, &clf, LossKind::Logistic).unwrap(),
                nnpu_risk(&batch, &clf, LossKind::Logistic, 0.0).unwrap().0,
            ] {
                prop_assert!((v.total - v.positive_part - v.negative_part).abs() <= 1e-12);
            }
        }
    }
}
