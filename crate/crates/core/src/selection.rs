//! Model selection without negative labels.
//!
//! Proxy accuracy (PA) and proxy AUC (PAUC) are computable from positive and
//! unlabeled validation data alone. Neither estimates its target metric
//! directly; each is an affine transform of it in expectation, so the argmax
//! over candidate checkpoints is preserved:
//!
//! - `ACC = E[PA] − π` ([`pa_to_acc`]);
//! - `AUC = E[PAUC]/(1−π_eff) − π_eff/(2−2π_eff)` ([`pauc_to_auc`]), where
//!   `π_eff` is the class prior of the unlabeled validation pool: `π` under
//!   TS, the shifted prior under OS.
//!
//! Oracle accuracy (OA) peeks at the true labels of unlabeled validation
//! rows and exists only as a benchmark upper reference. Callers gate it
//! behind an explicit oracle mode; PA and PAUC are the defaults.

use ndarray::{Array1, ArrayView1};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{PuDataset, Setting};
use crate::metrics::{auc, MetricsError};
use crate::model::{score_batch, Classifier, ModelError};

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("oracle accuracy requires oracle labels on the validation set")]
    MissingOracleLabels,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Selection criterion token; `pa`, `pauc`, and `oa` in configs and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Pa,
    Pauc,
    Oa,
}

impl Criterion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::Pa => "pa",
            Criterion::Pauc => "pauc",
            Criterion::Oa => "oa",
        }
    }

    /// Whether the criterion reads oracle labels.
    pub fn needs_oracle(&self) -> bool {
        matches!(self, Criterion::Oa)
    }
}

impl std::str::FromStr for Criterion {
    type Err = SelectionError;

    fn from_str(s: &str) -> Result<Self, SelectionError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pa" => Ok(Criterion::Pa),
            "pauc" => Ok(Criterion::Pauc),
            "oa" => Ok(Criterion::Oa),
            other => Err(SelectionError::InvalidParameter(format!(
                "unknown criterion `{other}` (expected pa, pauc, or oa)"
            ))),
        }
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn validate_prior(prior: f64) -> Result<(), SelectionError> {
    if prior > 0.0 && prior < 1.0 {
        Ok(())
    } else {
        Err(SelectionError::InvalidParameter(format!(
            "prior must lie in (0, 1), got {prior}"
        )))
    }
}

fn count_at_least(scores: &Array1<f64>, threshold: f64) -> usize {
    scores.iter().filter(|&&z| z >= threshold).count()
}

/// Proxy accuracy at decision threshold 0.
pub fn proxy_accuracy(
    classifier: &Classifier,
    val: &PuDataset,
    prior: f64,
) -> Result<f64, SelectionError> {
    proxy_accuracy_at(classifier, val, prior, 0.0)
}

/// Proxy accuracy with predictions `score ≥ threshold`:
///
/// - TS: `(2π/n'_P)·#{P: positive} + (1/n'_U)·#{U: negative}`;
/// - OS: `(2π/n'_P)·#{P: positive} + (1/(n'_P+n'_U))·#{P∪U: negative}`.
///
/// Values range over [0, 2π+1]; PA is a selection score, not a probability.
pub fn proxy_accuracy_at(
    classifier: &Classifier,
    val: &PuDataset,
    prior: f64,
    threshold: f64,
) -> Result<f64, SelectionError> {
    validate_prior(prior)?;
    let scores_p = score_batch(classifier, val.positives().view())?;
    let scores_u = score_batch(classifier, val.unlabeled().view())?;
    let n_p = val.n_p() as f64;
    let n_u = val.n_u() as f64;
    let pos_on_p = count_at_least(&scores_p, threshold) as f64;
    let neg_on_u = n_u - count_at_least(&scores_u, threshold) as f64;
    let positive_term = 2.0 * prior * pos_on_p / n_p;
    let negative_term = match val.setting() {
        Setting::Ts => neg_on_u / n_u,
        Setting::Os => {
            let neg_on_p = n_p - pos_on_p;
            (neg_on_p + neg_on_u) / (n_p + n_u)
        }
    };
    Ok(positive_term + negative_term)
}

/// Proxy AUC: rank statistic of positive validation scores against
/// unlabeled validation scores, ties counted half. The same formula serves
/// both settings and needs no prior.
pub fn proxy_auc(classifier: &Classifier, val: &PuDataset) -> Result<f64, SelectionError> {
    let scores_p = score_batch(classifier, val.positives().view())?;
    let scores_u = score_batch(classifier, val.unlabeled().view())?;
    let all: Vec<f64> = scores_p.iter().chain(scores_u.iter()).copied().collect();
    let labels: Vec<i8> = std::iter::repeat(1)
        .take(val.n_p())
        .chain(std::iter::repeat(-1).take(val.n_u()))
        .collect();
    Ok(auc(
        ArrayView1::from(&all),
        ArrayView1::from(&labels),
    )?)
}

/// Oracle accuracy at decision threshold 0.
pub fn oracle_accuracy(classifier: &Classifier, val: &PuDataset) -> Result<f64, SelectionError> {
    oracle_accuracy_at(classifier, val, 0.0)
}

/// Oracle accuracy with predictions `score ≥ threshold`. Under TS the
/// unlabeled rows alone form a marginal sample, so accuracy is taken over
/// them; under OS the marginal sample is `P ∪ U` with positives known to be
/// `+1`.
pub fn oracle_accuracy_at(
    classifier: &Classifier,
    val: &PuDataset,
    threshold: f64,
) -> Result<f64, SelectionError> {
    let oracle = val
        .oracle_unlabeled_labels()
        .ok_or(SelectionError::MissingOracleLabels)?;
    let scores_u = score_batch(classifier, val.unlabeled().view())?;
    let correct_u = scores_u
        .iter()
        .zip(oracle.iter())
        .filter(|(&z, &y)| (z >= threshold) == (y == 1))
        .count();
    match val.setting() {
        Setting::Ts => Ok(correct_u as f64 / val.n_u() as f64),
        Setting::Os => {
            let scores_p = score_batch(classifier, val.positives().view())?;
            let correct_p = count_at_least(&scores_p, threshold);
            Ok((correct_p + correct_u) as f64 / (val.n_p() + val.n_u()) as f64)
        }
    }
}

/// Invert the PA identity: `ACC = PA − π`.
pub fn pa_to_acc(pa: f64, prior: f64) -> Result<f64, SelectionError> {
    validate_prior(prior)?;
    Ok(pa - prior)
}

/// Invert the PAUC identity: `AUC = PAUC/(1−π_eff) − π_eff/(2−2π_eff)`.
///
/// `π_eff` is the unlabeled-pool prior, which is 0 when every positive was
/// labeled (OS with c = 1), so the domain is `[0, 1)`.
pub fn pauc_to_auc(pauc: f64, pi_eff: f64) -> Result<f64, SelectionError> {
    if !(0.0..1.0).contains(&pi_eff) {
        return Err(SelectionError::InvalidParameter(format!(
            "effective prior must lie in [0, 1), got {pi_eff}"
        )));
    }
    Ok(pauc / (1.0 - pi_eff) - pi_eff / (2.0 - 2.0 * pi_eff))
}
