//! Dataset representation and PU synthesis.
//!
//! A [`LabeledDataset`] carries ground-truth ±1 labels and is used for test
//! sets and oracles. A [`PuDataset`] carries a positive set and an unlabeled
//! set under one of two generation settings:
//!
//! - **TS (two-sample)**: positives drawn from the positive class-conditional
//!   density, unlabeled points drawn independently from the marginal.
//! - **OS (one-sample)**: a single marginal sample in which each positive
//!   point is labeled independently with probability `c` (the label
//!   frequency); labeled points form the positive set, the rest stay
//!   unlabeled. The unlabeled pool then has the shifted class prior
//!   `(1 - c)·π / (1 - c·π)` rather than `π`.
//!
//! Oracle labels of unlabeled rows are retained internally for diagnostics
//! and oracle-accuracy evaluation, but no training path reads them: risk
//! estimators only ever see the feature matrices.

use ndarray::{Array1, Array2, Axis};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod csv;

pub use csv::{load_csv, save_labeled_csv, save_pu_csv, LoadedCsv, PuCsvData};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("invalid mixture spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degenerate draw: {0}")]
    DegenerateDraw(String),
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),
    #[error("parse error at {path} row {row}, column {col}: {message}")]
    Parse {
        path: String,
        row: usize,
        col: usize,
        message: String,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// PU data-generation setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Setting {
    /// One-sample: positives are labeled out of a single marginal draw.
    Os,
    /// Two-sample: positive and unlabeled sets drawn independently.
    Ts,
}

impl Setting {
    pub fn as_str(&self) -> &'static str {
        match self {
            Setting::Os => "OS",
            Setting::Ts => "TS",
        }
    }
}

impl std::str::FromStr for Setting {
    type Err = DataError;

    fn from_str(s: &str) -> Result<Self, DataError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "OS" => Ok(Setting::Os),
            "TS" => Ok(Setting::Ts),
            other => Err(DataError::InvalidParameter(format!(
                "unknown setting `{other}` (expected OS or TS)"
            ))),
        }
    }
}

impl std::fmt::Display for Setting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fully labeled dataset: an `n × d` feature matrix with ±1 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Array2<f64>,
    labels: Array1<i8>,
}

impl LabeledDataset {
    pub fn new(features: Array2<f64>, labels: Array1<i8>) -> Result<Self, DataError> {
        if features.nrows() != labels.len() {
            return Err(DataError::ShapeMismatch(format!(
                "{} feature rows vs {} labels",
                features.nrows(),
                labels.len()
            )));
        }
        if features.ncols() == 0 {
            return Err(DataError::ShapeMismatch("feature dimension is 0".into()));
        }
        if !features.iter().all(|v| v.is_finite()) {
            return Err(DataError::InvalidParameter(
                "features contain a non-finite value".into(),
            ));
        }
        if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
            return Err(DataError::InvalidParameter(format!(
                "label {bad} is not in {{+1, -1}}"
            )));
        }
        Ok(Self { features, labels })
    }

    pub fn n(&self) -> usize {
        self.features.nrows()
    }

    pub fn dim(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> &Array2<f64> {
        &self.features
    }

    pub fn labels(&self) -> &Array1<i8> {
        &self.labels
    }
}

/// Isotropic two-Gaussian mixture: `p(x) = π·N(mean_pos, scale_pos²·I) +
/// (1-π)·N(mean_neg, scale_neg²·I)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixtureSpec {
    pub dim: usize,
    pub mean_pos: Vec<f64>,
    pub mean_neg: Vec<f64>,
    pub scale_pos: f64,
    pub scale_neg: f64,
    pub prior: f64,
}

impl GaussianMixtureSpec {
    pub fn new(
        mean_pos: Vec<f64>,
        mean_neg: Vec<f64>,
        scale_pos: f64,
        scale_neg: f64,
        prior: f64,
    ) -> Result<Self, DataError> {
        if mean_pos.is_empty() || mean_pos.len() != mean_neg.len() {
            return Err(DataError::InvalidSpec(format!(
                "mean dimensions disagree: {} vs {}",
                mean_pos.len(),
                mean_neg.len()
            )));
        }
        if !mean_pos.iter().chain(mean_neg.iter()).all(|v| v.is_finite()) {
            return Err(DataError::InvalidSpec("non-finite mean".into()));
        }
        if !(scale_pos > 0.0 && scale_pos.is_finite()) || !(scale_neg > 0.0 && scale_neg.is_finite())
        {
            return Err(DataError::InvalidSpec(format!(
                "scales must be positive and finite, got {scale_pos} and {scale_neg}"
            )));
        }
        if !(prior > 0.0 && prior < 1.0) {
            return Err(DataError::InvalidSpec(format!(
                "prior must lie in (0, 1), got {prior}"
            )));
        }
        Ok(Self {
            dim: mean_pos.len(),
            mean_pos,
            mean_neg,
            scale_pos,
            scale_neg,
            prior,
        })
    }

    /// Draw one feature row from the class-conditional density of `label`.
    fn sample_class<R: Rng + ?Sized>(&self, label: i8, out: &mut [f64], rng: &mut R) {
        let (mean, scale) = if label == 1 {
            (&self.mean_pos, self.scale_pos)
        } else {
            (&self.mean_neg, self.scale_neg)
        };
        for (slot, m) in out.iter_mut().zip(mean) {
            let z: f64 = rng.sample(StandardNormal);
            *slot = m + scale * z;
        }
    }
}

/// Positive + unlabeled dataset with its generation metadata.
///
/// Oracle labels, when present, record the true class of each unlabeled row.
/// They are deliberately not exposed to training code; see
/// [`oracle_unlabeled_labels`](Self::oracle_unlabeled_labels) for the
/// benchmark-only accessor.
#[derive(Debug, Clone, PartialEq)]
pub struct PuDataset {
    positives: Array2<f64>,
    unlabeled: Array2<f64>,
    setting: Setting,
    prior: f64,
    label_frequency: Option<f64>,
    oracle_unlabeled_labels: Option<Array1<i8>>,
}

impl PuDataset {
    pub fn new(
        positives: Array2<f64>,
        unlabeled: Array2<f64>,
        setting: Setting,
        prior: f64,
        label_frequency: Option<f64>,
        oracle_unlabeled_labels: Option<Array1<i8>>,
    ) -> Result<Self, DataError> {
        if positives.nrows() == 0 || unlabeled.nrows() == 0 {
            return Err(DataError::ShapeMismatch(format!(
                "need at least one positive and one unlabeled row, got {} and {}",
                positives.nrows(),
                unlabeled.nrows()
            )));
        }
        if positives.ncols() != unlabeled.ncols() {
            return Err(DataError::ShapeMismatch(format!(
                "positive dim {} vs unlabeled dim {}",
                positives.ncols(),
                unlabeled.ncols()
            )));
        }
        if !positives
            .iter()
            .chain(unlabeled.iter())
            .all(|v| v.is_finite())
        {
            return Err(DataError::InvalidParameter(
                "features contain a non-finite value".into(),
            ));
        }
        if !(prior > 0.0 && prior < 1.0) {
            return Err(DataError::InvalidParameter(format!(
                "prior must lie in (0, 1), got {prior}"
            )));
        }
        if setting == Setting::Os {
            match label_frequency {
                Some(c) if c > 0.0 && c <= 1.0 => {}
                Some(c) => {
                    return Err(DataError::InvalidParameter(format!(
                        "label frequency must lie in (0, 1], got {c}"
                    )))
                }
                None => {
                    return Err(DataError::InvalidParameter(
                        "OS dataset requires a label frequency".into(),
                    ))
                }
            }
        }
        if let Some(labels) = &oracle_unlabeled_labels {
            if labels.len() != unlabeled.nrows() {
                return Err(DataError::ShapeMismatch(format!(
                    "{} oracle labels vs {} unlabeled rows",
                    labels.len(),
                    unlabeled.nrows()
                )));
            }
            if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
                return Err(DataError::InvalidParameter(format!(
                    "oracle label {bad} is not in {{+1, -1}}"
                )));
            }
        }
        Ok(Self {
            positives,
            unlabeled,
            setting,
            prior,
            label_frequency,
            oracle_unlabeled_labels,
        })
    }

    pub fn n_p(&self) -> usize {
        self.positives.nrows()
    }

    pub fn n_u(&self) -> usize {
        self.unlabeled.nrows()
    }

    pub fn dim(&self) -> usize {
        self.positives.ncols()
    }

    pub fn positives(&self) -> &Array2<f64> {
        &self.positives
    }

    pub fn unlabeled(&self) -> &Array2<f64> {
        &self.unlabeled
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn label_frequency(&self) -> Option<f64> {
        self.label_frequency
    }

    /// True labels of the unlabeled rows. Benchmark-only: oracle accuracy and
    /// diagnostics may read these; estimator training paths must not.
    pub fn oracle_unlabeled_labels(&self) -> Option<&Array1<i8>> {
        self.oracle_unlabeled_labels.as_ref()
    }

    /// Copy of the dataset with oracle labels removed, for asserting that
    /// PU-only paths do not depend on them.
    pub fn without_oracle_labels(&self) -> PuDataset {
        PuDataset {
            oracle_unlabeled_labels: None,
            ..self.clone()
        }
    }

    /// Class prior of the unlabeled pool: `os_prior(π, c)` under OS, `π`
    /// under TS.
    pub fn unlabeled_prior(&self) -> f64 {
        match self.setting {
            Setting::Ts => self.prior,
            Setting::Os => os_prior(
                self.prior,
                self.label_frequency.expect("OS dataset carries c"),
            ),
        }
    }
}

/// Train/validation pair sharing setting, prior, and label frequency.
#[derive(Debug, Clone)]
pub struct PuSplit {
    pub train: PuDataset,
    pub validation: PuDataset,
}

/// Draw `n` labeled points i.i.d. from the mixture: label +1 with
/// probability `π`, features from the matching class-conditional Gaussian.
pub fn synthesize_labeled<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    n: usize,
    rng: &mut R,
) -> Result<LabeledDataset, DataError> {
    if n == 0 {
        return Err(DataError::InvalidParameter("n must be at least 1".into()));
    }
    let mut features = Array2::zeros((n, spec.dim));
    let mut labels = Array1::zeros(n);
    for i in 0..n {
        let y: i8 = if rng.random_bool(spec.prior) { 1 } else { -1 };
        labels[i] = y;
        spec.sample_class(y, features.row_mut(i).as_slice_mut().unwrap(), rng);
    }
    LabeledDataset::new(features, labels)
}

/// Draw `n` feature rows from one class-conditional of the mixture.
pub fn synthesize_class<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    label: i8,
    n: usize,
    rng: &mut R,
) -> Result<Array2<f64>, DataError> {
    if n == 0 {
        return Err(DataError::InvalidParameter("n must be at least 1".into()));
    }
    if label != 1 && label != -1 {
        return Err(DataError::InvalidParameter(format!(
            "label {label} is not in {{+1, -1}}"
        )));
    }
    let mut features = Array2::zeros((n, spec.dim));
    for i in 0..n {
        spec.sample_class(label, features.row_mut(i).as_slice_mut().unwrap(), rng);
    }
    Ok(features)
}

/// Two-sample PU synthesis: `n_p` positives from the positive
/// class-conditional, `n_u` unlabeled points from the marginal (oracle
/// labels retained).
pub fn make_ts_pu<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    n_p: usize,
    n_u: usize,
    rng: &mut R,
) -> Result<PuDataset, DataError> {
    if n_p == 0 || n_u == 0 {
        return Err(DataError::InvalidParameter(
            "n_p and n_u must be at least 1".into(),
        ));
    }
    let positives = synthesize_class(spec, 1, n_p, rng)?;
    let marginal = synthesize_labeled(spec, n_u, rng)?;
    let (unlabeled, oracle) = (marginal.features, marginal.labels);
    PuDataset::new(
        positives,
        unlabeled,
        Setting::Ts,
        spec.prior,
        None,
        Some(oracle),
    )
}

/// One-sample PU synthesis: draw `n` points from the marginal; each positive
/// point is moved to the positive set independently with probability `c`;
/// everything else stays unlabeled (oracle labels retained).
///
/// Fails with a degenerate-draw error when either side comes out empty; the
/// caller retries with a larger `n`.
pub fn make_os_pu<R: Rng + ?Sized>(
    spec: &GaussianMixtureSpec,
    n: usize,
    c: f64,
    rng: &mut R,
) -> Result<PuDataset, DataError> {
    if n < 2 {
        return Err(DataError::InvalidParameter("n must be at least 2".into()));
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(DataError::InvalidParameter(format!(
            "label frequency must lie in (0, 1], got {c}"
        )));
    }
    let marginal = synthesize_labeled(spec, n, rng)?;
    let mut pos_rows = Vec::new();
    let mut unl_rows = Vec::new();
    let mut oracle = Vec::new();
    for i in 0..n {
        let y = marginal.labels[i];
        if y == 1 && rng.random_bool(c) {
            pos_rows.push(i);
        } else {
            unl_rows.push(i);
            oracle.push(y);
        }
    }
    if pos_rows.is_empty() || unl_rows.is_empty() {
        return Err(DataError::DegenerateDraw(format!(
            "n={n}, c={c} produced {} labeled and {} unlabeled rows",
            pos_rows.len(),
            unl_rows.len()
        )));
    }
    let positives = marginal.features.select(Axis(0), &pos_rows);
    let unlabeled = marginal.features.select(Axis(0), &unl_rows);
    PuDataset::new(
        positives,
        unlabeled,
        Setting::Os,
        spec.prior,
        Some(c),
        Some(Array1::from_vec(oracle)),
    )
}

/// Assign each positive and each unlabeled row to the validation half
/// independently with probability `rate` (per-point Bernoulli, so that under
/// OS the validation union remains an i.i.d. marginal sample). Metadata is
/// copied to both halves.
pub fn split_validation<R: Rng + ?Sized>(
    pu: &PuDataset,
    rate: f64,
    rng: &mut R,
) -> Result<PuSplit, DataError> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(DataError::InvalidParameter(format!(
            "validation rate must lie strictly in (0, 1), got {rate}"
        )));
    }
    let mut to_val_p = vec![false; pu.n_p()];
    for flag in to_val_p.iter_mut() {
        *flag = rng.random_bool(rate);
    }
    let mut to_val_u = vec![false; pu.n_u()];
    for flag in to_val_u.iter_mut() {
        *flag = rng.random_bool(rate);
    }

    let part = |flags: &[bool], keep: bool| -> Vec<usize> {
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f == keep)
            .map(|(i, _)| i)
            .collect()
    };
    let train_p = part(&to_val_p, false);
    let val_p = part(&to_val_p, true);
    let train_u = part(&to_val_u, false);
    let val_u = part(&to_val_u, true);
    if train_p.is_empty() || val_p.is_empty() || train_u.is_empty() || val_u.is_empty() {
        return Err(DataError::DegenerateSplit(format!(
            "rate={rate} left counts P {}/{}, U {}/{}",
            train_p.len(),
            val_p.len(),
            train_u.len(),
            val_u.len()
        )));
    }

    let oracle_take = |rows: &[usize]| {
        pu.oracle_unlabeled_labels
            .as_ref()
            .map(|labels| Array1::from_iter(rows.iter().map(|&i| labels[i])))
    };

    let train = PuDataset::new(
        pu.positives.select(Axis(0), &train_p),
        pu.unlabeled.select(Axis(0), &train_u),
        pu.setting,
        pu.prior,
        pu.label_frequency,
        oracle_take(&train_u),
    )?;
    let validation = PuDataset::new(
        pu.positives.select(Axis(0), &val_p),
        pu.unlabeled.select(Axis(0), &val_u),
        pu.setting,
        pu.prior,
        pu.label_frequency,
        oracle_take(&val_u),
    )?;
    Ok(PuSplit { train, validation })
}

/// Label-frequency estimate with its clipping indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelFrequencyEstimate {
    pub value: f64,
    /// Raw estimate exceeded 1 and was clipped; signals a π underestimate or
    /// sampling noise.
    pub clipped: bool,
}

/// Estimate the label frequency as `n_P / (π·(n_P + n_U))`, clipped to
/// `(0, 1]`.
pub fn estimate_label_frequency(
    n_p: usize,
    n_u: usize,
    prior: f64,
) -> Result<LabelFrequencyEstimate, DataError> {
    if n_p == 0 || n_u == 0 {
        return Err(DataError::InvalidParameter(
            "n_p and n_u must be at least 1".into(),
        ));
    }
    if !(prior > 0.0 && prior < 1.0) {
        return Err(DataError::InvalidParameter(format!(
            "prior must lie in (0, 1), got {prior}"
        )));
    }
    let raw = n_p as f64 / (prior * (n_p + n_u) as f64);
    if raw > 1.0 {
        Ok(LabelFrequencyEstimate {
            value: 1.0,
            clipped: true,
        })
    } else {
        Ok(LabelFrequencyEstimate {
            value: raw,
            clipped: false,
        })
    }
}

/// Class prior of the unlabeled pool under the OS setting:
/// `(1 - c)·π / (1 - c·π)`, which lies in `[0, π)` for `c ∈ (0, 1]`.
pub fn os_prior(prior: f64, c: f64) -> f64 {
    (1.0 - c) * prior / (1.0 - c * prior)
}
