//! Positive-unlabeled (PU) learning: cost-sensitive risk estimators for the
//! one-sample (OS) and two-sample (TS) data-generation settings, PU-only
//! model-selection criteria, and a reproducible benchmark harness.
//!
//! The crate is organized around the lifecycle of a PU experiment:
//!
//! - [`data`]: dataset types, synthetic Gaussian-mixture generation, OS/TS
//!   PU synthesis, validation splits, and CSV ingestion.
//! - [`model`]: linear and one-hidden-layer scorers, surrogate losses,
//!   SGD with momentum, and a finite-difference gradient checker.
//! - [`risk`]: the uPU / nnPU / nnPU-GA estimator family, the calibrated
//!   estimator for the OS setting, the replenishment training wrapper, and
//!   quantile thresholding.
//! - [`selection`]: proxy accuracy, proxy AUC, and oracle accuracy for
//!   model selection without negative labels.
//! - [`metrics`]: test-set accuracy, AUC with midrank tie handling,
//!   precision, recall, and F1.
//! - [`harness`]: experiment configs, random hyperparameter search, the
//!   train/validate/select/test protocol, and report emission.
//! - [`checks`]: runtime property oracles backing the `check` CLI command.

pub mod checks;
pub mod data;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod risk;
pub mod selection;

pub use data::{
    GaussianMixtureSpec, LabeledDataset, PuDataset, PuSplit, Setting,
};
pub use model::{Architecture, Classifier, LossKind, OptimizerState};
pub use risk::{BaseEstimator, EstimatorKind, RiskBatch, RiskValue, TrainSchedule};
