//! Test-set evaluation on ground-truth ±1 labels.
//!
//! A score of exactly zero counts as a positive prediction; the same
//! convention is used by every thresholded decision in this crate.
//!
//! Degenerate denominators (no predicted positives, no actual positives)
//! yield a value of 0 with an explicit flag instead of NaN, so means and
//! standard deviations aggregated over many trials stay finite.

use ndarray::ArrayView1;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("length mismatch: {0} scores vs {1} labels")]
    LengthMismatch(usize, usize),
    #[error("label {0} is not in {{+1, -1}}")]
    InvalidLabel(i8),
    #[error("scores contain a non-finite value")]
    NonFinite,
    #[error("AUC is undefined on single-class input ({positives} positives, {negatives} negatives)")]
    SingleClass { positives: usize, negatives: usize },
    #[error("unknown metric `{0}` (expected acc, auc, f1, precision, or recall)")]
    UnknownMetric(String),
}

/// Stable metric tokens used in configs, report columns, and trial records.
/// The declaration order is the canonical column order.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Acc,
    Auc,
    F1,
    Precision,
    Recall,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::Acc,
        MetricKind::Auc,
        MetricKind::F1,
        MetricKind::Precision,
        MetricKind::Recall,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MetricKind::Acc => "acc",
            MetricKind::Auc => "auc",
            MetricKind::F1 => "f1",
            MetricKind::Precision => "precision",
            MetricKind::Recall => "recall",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, MetricsError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "acc" => Ok(MetricKind::Acc),
            "auc" => Ok(MetricKind::Auc),
            "f1" => Ok(MetricKind::F1),
            "precision" => Ok(MetricKind::Precision),
            "recall" => Ok(MetricKind::Recall),
            other => Err(MetricsError::UnknownMetric(other.to_string())),
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tallies of a thresholded classifier against ±1 labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_pos: usize,
    pub false_pos: usize,
    pub true_neg: usize,
    pub false_neg: usize,
}

impl ConfusionCounts {
    pub fn n(&self) -> usize {
        self.true_pos + self.false_pos + self.true_neg + self.false_neg
    }
}

/// Metric value plus a degeneracy flag for undefined denominators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricOutcome {
    pub value: f64,
    pub degenerate: bool,
}

impl MetricOutcome {
    fn defined(value: f64) -> Self {
        Self {
            value,
            degenerate: false,
        }
    }

    fn degenerate() -> Self {
        Self {
            value: 0.0,
            degenerate: true,
        }
    }
}

/// Tally predictions at threshold 0 (score ≥ 0 predicts positive).
pub fn confusion(
    scores: ArrayView1<f64>,
    labels: ArrayView1<i8>,
) -> Result<ConfusionCounts, MetricsError> {
    confusion_at(scores, labels, 0.0)
}

/// Tally predictions at an explicit threshold (score ≥ threshold predicts
/// positive; a `+∞` threshold predicts nothing positive).
pub fn confusion_at(
    scores: ArrayView1<f64>,
    labels: ArrayView1<i8>,
    threshold: f64,
) -> Result<ConfusionCounts, MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::LengthMismatch(scores.len(), labels.len()));
    }
    let mut counts = ConfusionCounts::default();
    for (&z, &y) in scores.iter().zip(labels.iter()) {
        if z.is_nan() {
            return Err(MetricsError::NonFinite);
        }
        let predicted_positive = z >= threshold;
        match (y, predicted_positive) {
            (1, true) => counts.true_pos += 1,
            (1, false) => counts.false_neg += 1,
            (-1, false) => counts.true_neg += 1,
            (-1, true) => counts.false_pos += 1,
            (other, _) => return Err(MetricsError::InvalidLabel(other)),
        }
    }
    Ok(counts)
}

pub fn accuracy(counts: &ConfusionCounts) -> MetricOutcome {
    let n = counts.n();
    if n == 0 {
        MetricOutcome::degenerate()
    } else {
        MetricOutcome::defined((counts.true_pos + counts.true_neg) as f64 / n as f64)
    }
}

pub fn precision(counts: &ConfusionCounts) -> MetricOutcome {
    let denom = counts.true_pos + counts.false_pos;
    if denom == 0 {
        MetricOutcome::degenerate()
    } else {
        MetricOutcome::defined(counts.true_pos as f64 / denom as f64)
    }
}

pub fn recall(counts: &ConfusionCounts) -> MetricOutcome {
    let denom = counts.true_pos + counts.false_neg;
    if denom == 0 {
        MetricOutcome::degenerate()
    } else {
        MetricOutcome::defined(counts.true_pos as f64 / denom as f64)
    }
}

pub fn f1(counts: &ConfusionCounts) -> MetricOutcome {
    let p = precision(counts);
    let r = recall(counts);
    if p.degenerate || r.degenerate || p.value + r.value == 0.0 {
        MetricOutcome::degenerate()
    } else {
        MetricOutcome::defined(2.0 * p.value * r.value / (p.value + r.value))
    }
}

/// Empirical AUC: probability over positive-negative pairs that the
/// positive outranks the negative, ties counted half. Computed via midranks
/// in O(m log m); agrees exactly with the brute-force pairwise sum because
/// both numerators are the same half-integer.
pub fn auc(scores: ArrayView1<f64>, labels: ArrayView1<i8>) -> Result<f64, MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::LengthMismatch(scores.len(), labels.len()));
    }
    if !scores.iter().all(|z| z.is_finite()) {
        return Err(MetricsError::NonFinite);
    }
    if let Some(&bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
        return Err(MetricsError::InvalidLabel(bad));
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricsError::SingleClass {
            positives: n_pos,
            negatives: n_neg,
        });
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // Sum of positive midranks (1-based); tie groups share the average of
    // their rank range, which is a half-integer, so the sum is exact.
    let mut rank_sum_pos = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let midrank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            if labels[i] == 1 {
                rank_sum_pos += midrank;
            }
        }
        start = end;
    }
    let np = n_pos as f64;
    Ok((rank_sum_pos - np * (np + 1.0) / 2.0) / (np * n_neg as f64))
}
