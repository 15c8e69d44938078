//! Experiment orchestration: configs, seeded trials, aggregation, reports.
//!
//! A benchmark run enumerates (algorithm, split, draw) trials. Every random
//! decision flows from the master seed through [`child_seed`], so reruns of
//! the same config produce identical results regardless of how many worker
//! threads execute the trials. Data splits are derived per split index and
//! shared by all algorithms and hyperparameter draws, which keeps the
//! algorithm comparison paired.

mod config;
mod report;
mod trial;

pub use config::{
    AlgoFamily, AlgorithmSpec, DatasetSource, ExperimentConfig, ModelSpec, SweepKey, SweepSpec,
    SynthDataset, SynthSpec,
};
pub use report::{
    aggregate, emit_report, read_trials, render_summary_csv, render_sweep_csv, AggregateOutput,
    SummaryCell, SummaryTable, SweepTable,
};
pub use trial::{
    generate_synth, prepare_source, prepare_split, run_benchmark, run_trial, BenchmarkOutput,
    CheckpointRecord, PreparedSource, SplitData, SweepPoint, TrialResult,
};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::DataError;
use crate::metrics::MetricsError;
use crate::model::ModelError;
use crate::risk::RiskError;
use crate::selection::SelectionError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error("trial record: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Risk(#[from] RiskError),
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("thread pool: {0}")]
    Pool(String),
}

impl HarnessError {
    /// Process exit code the CLI should use for this error: 2 for I/O
    /// problems, 1 for everything else (validation and computation).
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => 2,
            HarnessError::Data(DataError::Io { .. }) => 2,
            _ => 1,
        }
    }
}

/// Independent random streams derived from the master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedStream {
    /// Training pool synthesis and the train/validation split, per split.
    Data = 1,
    /// Held-out labeled test set, per split.
    Test = 2,
    /// Hyperparameter draws, per draw index (shared across splits).
    Hyper = 3,
    /// Classifier init and mini-batch shuffling, per (split, draw).
    Trial = 4,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed for one random stream. Distinct (stream, a, b)
/// triples give statistically independent seeds for the same master.
pub fn child_seed(master: u64, stream: SeedStream, a: u64, b: u64) -> u64 {
    let mut s = splitmix64(master ^ (stream as u64).wrapping_mul(0xA076_1D64_78BD_642F));
    s = splitmix64(s ^ a.wrapping_mul(0xE703_7ED1_A0B4_28DB));
    s = splitmix64(s ^ b.wrapping_mul(0x8EBC_6AF0_9C88_C6E3));
    splitmix64(s)
}

/// One random-search configuration. Only the learning rate and batch size
/// are sampled; the rest are fixed by the training protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperparamDraw {
    pub learning_rate: f64,
    /// Requested mini-batch size for both pools; clamped to each pool's
    /// actual size when a trial starts.
    pub batch_size: usize,
    pub momentum: f64,
    pub weight_decay: f64,
    pub nnpu_tolerance: f64,
}

/// Draw a search point: learning rate log-uniform over 10^[-4.5, -2.5] and
/// batch size 2^U(4, 7) rounded to the nearest integer.
pub fn sample_hyperparams<R: Rng + ?Sized>(rng: &mut R) -> HyperparamDraw {
    let learning_rate = 10f64.powf(rng.random_range(-4.5..-2.5));
    let batch_size = 2f64.powf(rng.random_range(4.0..7.0)).round() as usize;
    HyperparamDraw {
        learning_rate,
        batch_size,
        momentum: 0.9,
        weight_decay: 0.0,
        nnpu_tolerance: 0.0,
    }
}

/// Index of the maximum validation value, ties resolved toward the
/// earliest checkpoint. Returns `None` for an empty slice.
pub fn select_checkpoint(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some((_, bv)) if !(v > bv) => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn select_checkpoint_prefers_earliest_tie() {
        assert_eq!(select_checkpoint(&[0.8, 0.9, 0.9, 0.7]), Some(1));
        assert_eq!(select_checkpoint(&[0.5]), Some(0));
        assert_eq!(select_checkpoint(&[1.0, 1.0, 1.0]), Some(0));
        assert_eq!(select_checkpoint(&[0.1, 0.2, 0.3]), Some(2));
        assert_eq!(select_checkpoint(&[]), None);
    }

    #[test]
    fn child_seeds_separate_streams_and_indices() {
        let master = 42;
        let a = child_seed(master, SeedStream::Data, 0, 0);
        assert_eq!(a, child_seed(master, SeedStream::Data, 0, 0));
        let others = [
            child_seed(master, SeedStream::Test, 0, 0),
            child_seed(master, SeedStream::Data, 1, 0),
            child_seed(master, SeedStream::Data, 0, 1),
            child_seed(master + 1, SeedStream::Data, 0, 0),
        ];
        for other in others {
            assert_ne!(a, other);
        }
    }

    #[test]
    fn hyperparams_respect_search_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10_000 {
            let draw = sample_hyperparams(&mut rng);
            assert!(draw.learning_rate >= 10f64.powf(-4.5));
            assert!(draw.learning_rate < 10f64.powf(-2.5));
            assert!((16..=128).contains(&draw.batch_size));
            assert_eq!(draw.momentum, 0.9);
            assert_eq!(draw.weight_decay, 0.0);
            assert_eq!(draw.nnpu_tolerance, 0.0);
        }
    }

    #[test]
    fn hyperparam_log_rate_median_is_centered() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut logs: Vec<f64> = (0..100_000)
            .map(|_| sample_hyperparams(&mut rng).learning_rate.log10())
            .collect();
        logs.sort_by(f64::total_cmp);
        let median = (logs[49_999] + logs[50_000]) / 2.0;
        assert!(
            (median + 3.5).abs() < 0.02,
            "median log10 learning rate {median}, expected about -3.5"
        );
    }

    #[test]
    fn hyperparam_draws_are_deterministic() {
        let seed = child_seed(7, SeedStream::Hyper, 3, 0);
        let a = sample_hyperparams(&mut ChaCha8Rng::seed_from_u64(seed));
        let b = sample_hyperparams(&mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(a, b);
    }

    #[test]
    fn batch_draw_hits_both_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws: Vec<usize> = (0..20_000)
            .map(|_| sample_hyperparams(&mut rng).batch_size)
            .collect();
        assert!(draws.iter().any(|&b| b == 16));
        assert!(draws.iter().any(|&b| b >= 120));
    }
}
