//! Scorers, surrogate losses, and SGD.
//!
//! Every estimator in [`crate::risk`] is a weighted sum of surrogate-loss
//! terms `w_i · ℓ(f(x_i), s_i)` with signs `s_i ∈ {+1, -1}` and possibly
//! negative weights, so this module exposes exactly one differentiation
//! entry point, [`weighted_loss_and_grad`], plus a finite-difference checker
//! that validates it.
//!
//! Weight decay is applied inside [`sgd_step`], never added to the loss
//! value, so reported risk numbers stay pure estimator values.

use ndarray::{Array1, ArrayView1, ArrayView2};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Surrogate loss `ℓ(z, y)` on a real score `z` and sign `y ∈ {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    /// `ln(1 + exp(-yz))`, 1-Lipschitz in `z`.
    Logistic,
    /// `1 / (1 + exp(yz))`, bounded in (0, 1) with `ℓ(z,+1) + ℓ(z,-1) = 1`.
    Sigmoid,
    /// `(1 - yz)² / 4`.
    Squared,
}

impl LossKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LossKind::Logistic => "logistic",
            LossKind::Sigmoid => "sigmoid",
            LossKind::Squared => "squared",
        }
    }

    /// Loss value. Stable for |z| well past 500: the logistic branch uses
    /// the shifted softplus form, the sigmoid branch never exponentiates a
    /// positive argument.
    pub fn value(&self, z: f64, y: i8) -> f64 {
        let yz = f64::from(y) * z;
        match self {
            LossKind::Logistic => {
                // softplus(-yz) = max(-yz, 0) + ln(1 + exp(-|yz|))
                (-yz).max(0.0) + (-yz.abs()).exp().ln_1p()
            }
            LossKind::Sigmoid => stable_sigmoid(-yz),
            LossKind::Squared => {
                let r = 1.0 - yz;
                r * r / 4.0
            }
        }
    }

    /// Exact derivative of [`value`](Self::value) with respect to `z`.
    pub fn derivative(&self, z: f64, y: i8) -> f64 {
        let y = f64::from(y);
        let yz = y * z;
        match self {
            LossKind::Logistic => -y * stable_sigmoid(-yz),
            LossKind::Sigmoid => {
                let s = stable_sigmoid(-yz);
                -y * s * (1.0 - s)
            }
            LossKind::Squared => -y * (1.0 - yz) / 2.0,
        }
    }
}

impl std::str::FromStr for LossKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "logistic" => Ok(LossKind::Logistic),
            "sigmoid" => Ok(LossKind::Sigmoid),
            "squared" => Ok(LossKind::Squared),
            other => Err(ModelError::InvalidParameter(format!(
                "unknown loss `{other}` (expected logistic, sigmoid, or squared)"
            ))),
        }
    }
}

/// `1 / (1 + exp(-t))` without overflow for any finite `t`.
fn stable_sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Scorer shape: linear map or one-hidden-layer tanh network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Architecture {
    Linear { dim: usize },
    Mlp { dim: usize, hidden: usize },
}

impl Architecture {
    pub fn dim(&self) -> usize {
        match *self {
            Architecture::Linear { dim } => dim,
            Architecture::Mlp { dim, .. } => dim,
        }
    }

    /// Flat parameter count: `d + 1` for linear, `h·(d+1) + h + 1` for the
    /// MLP (hidden weights, hidden biases, output weights, output bias).
    pub fn param_count(&self) -> usize {
        match *self {
            Architecture::Linear { dim } => dim + 1,
            Architecture::Mlp { dim, hidden } => hidden * (dim + 1) + hidden + 1,
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        let ok = match *self {
            Architecture::Linear { dim } => dim > 0,
            Architecture::Mlp { dim, hidden } => dim > 0 && hidden > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(ModelError::InvalidParameter(format!(
                "architecture dimensions must be positive, got {self:?}"
            )))
        }
    }
}

/// A scorer: architecture plus flat parameter vector.
///
/// MLP layout: hidden weight matrix row-major (`hidden × dim`), then hidden
/// biases, then output weights, then the output bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classifier {
    architecture: Architecture,
    parameters: Vec<f64>,
}

impl Classifier {
    pub fn new(architecture: Architecture, parameters: Vec<f64>) -> Result<Self, ModelError> {
        architecture.validate()?;
        if parameters.len() != architecture.param_count() {
            return Err(ModelError::DimensionMismatch(format!(
                "{:?} needs {} parameters, got {}",
                architecture,
                architecture.param_count(),
                parameters.len()
            )));
        }
        if !parameters.iter().all(|v| v.is_finite()) {
            return Err(ModelError::NonFinite("classifier parameters"));
        }
        Ok(Self {
            architecture,
            parameters,
        })
    }

    pub fn zeroed(architecture: Architecture) -> Result<Self, ModelError> {
        Self::new(architecture, vec![0.0; architecture.param_count()])
    }

    /// Random initialization: input-side weights uniform in `±1/√d`, output
    /// weights uniform in `±1/√h`, biases zero.
    pub fn init_random<R: Rng + ?Sized>(
        architecture: Architecture,
        rng: &mut R,
    ) -> Result<Self, ModelError> {
        architecture.validate()?;
        let mut parameters = vec![0.0; architecture.param_count()];
        match architecture {
            Architecture::Linear { dim } => {
                let bound = 1.0 / (dim as f64).sqrt();
                for p in parameters.iter_mut().take(dim) {
                    *p = rng.random_range(-bound..bound);
                }
            }
            Architecture::Mlp { dim, hidden } => {
                let in_bound = 1.0 / (dim as f64).sqrt();
                let out_bound = 1.0 / (hidden as f64).sqrt();
                for p in parameters.iter_mut().take(hidden * dim) {
                    *p = rng.random_range(-in_bound..in_bound);
                }
                let out_w = hidden * dim + hidden;
                for p in parameters[out_w..out_w + hidden].iter_mut() {
                    *p = rng.random_range(-out_bound..out_bound);
                }
            }
        }
        Self::new(architecture, parameters)
    }

    pub fn architecture(&self) -> Architecture {
        self.architecture
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }

    pub fn dim(&self) -> usize {
        self.architecture.dim()
    }

    /// Score one feature row.
    pub fn score(&self, x: ArrayView1<f64>) -> Result<f64, ModelError> {
        if x.len() != self.dim() {
            return Err(ModelError::DimensionMismatch(format!(
                "input dim {} vs classifier dim {}",
                x.len(),
                self.dim()
            )));
        }
        let z = match self.architecture {
            Architecture::Linear { dim } => {
                let w = &self.parameters[..dim];
                let b = self.parameters[dim];
                x.iter().zip(w).map(|(xi, wi)| xi * wi).sum::<f64>() + b
            }
            Architecture::Mlp { dim, hidden } => {
                let (w1, b1, w2, b2) = self.mlp_views(dim, hidden);
                let mut z = b2;
                for k in 0..hidden {
                    let a: f64 = x
                        .iter()
                        .zip(w1.row(k))
                        .map(|(xi, wi)| xi * wi)
                        .sum::<f64>()
                        + b1[k];
                    z += w2[k] * a.tanh();
                }
                z
            }
        };
        if z.is_finite() {
            Ok(z)
        } else {
            Err(ModelError::NonFinite("score"))
        }
    }

    fn mlp_views(&self, dim: usize, hidden: usize) -> (ArrayView2<'_, f64>, &[f64], &[f64], f64) {
        let w1 = ArrayView2::from_shape((hidden, dim), &self.parameters[..hidden * dim])
            .expect("parameter vector length was validated at construction");
        let b1 = &self.parameters[hidden * dim..hidden * dim + hidden];
        let w2 = &self.parameters[hidden * dim + hidden..hidden * dim + 2 * hidden];
        let b2 = self.parameters[hidden * dim + 2 * hidden];
        (w1, b1, w2, b2)
    }
}

/// Score every row of `x`.
pub fn score_batch(
    classifier: &Classifier,
    x: ArrayView2<f64>,
) -> Result<Array1<f64>, ModelError> {
    if x.ncols() != classifier.dim() {
        return Err(ModelError::DimensionMismatch(format!(
            "input dim {} vs classifier dim {}",
            x.ncols(),
            classifier.dim()
        )));
    }
    let mut out = Array1::zeros(x.nrows());
    for (slot, row) in out.iter_mut().zip(x.rows()) {
        *slot = classifier.score(row)?;
    }
    Ok(out)
}

/// SGD state: `v ← momentum·v + grad + weight_decay·θ; θ ← θ − lr·v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerState {
    pub learning_rate: f64,
    pub momentum: f64,
    pub weight_decay: f64,
    velocity: Vec<f64>,
}

impl OptimizerState {
    pub fn new(
        learning_rate: f64,
        momentum: f64,
        weight_decay: f64,
        param_count: usize,
    ) -> Result<Self, ModelError> {
        if !(learning_rate > 0.0 && learning_rate.is_finite()) {
            return Err(ModelError::InvalidParameter(format!(
                "learning rate must be positive, got {learning_rate}"
            )));
        }
        if !(0.0..1.0).contains(&momentum) {
            return Err(ModelError::InvalidParameter(format!(
                "momentum must lie in [0, 1), got {momentum}"
            )));
        }
        if !(weight_decay >= 0.0 && weight_decay.is_finite()) {
            return Err(ModelError::InvalidParameter(format!(
                "weight decay must be non-negative, got {weight_decay}"
            )));
        }
        Ok(Self {
            learning_rate,
            momentum,
            weight_decay,
            velocity: vec![0.0; param_count],
        })
    }

    pub fn velocity(&self) -> &[f64] {
        &self.velocity
    }
}

/// One SGD step in place. A non-finite update leaves an error for the caller
/// to abort the trial; parameters are not partially written.
pub fn sgd_step(
    classifier: &mut Classifier,
    grad: &[f64],
    opt: &mut OptimizerState,
) -> Result<(), ModelError> {
    if grad.len() != classifier.parameters.len() || opt.velocity.len() != grad.len() {
        return Err(ModelError::DimensionMismatch(format!(
            "grad len {}, velocity len {}, parameter len {}",
            grad.len(),
            opt.velocity.len(),
            classifier.parameters.len()
        )));
    }
    let mut next = classifier.parameters.clone();
    for ((v, g), p) in opt.velocity.iter_mut().zip(grad).zip(next.iter_mut()) {
        *v = opt.momentum * *v + g + opt.weight_decay * *p;
        *p -= opt.learning_rate * *v;
        if !p.is_finite() {
            return Err(ModelError::NonFinite("sgd update"));
        }
    }
    classifier.parameters = next;
    Ok(())
}

/// Value and exact parameter gradient of `Σ_i weights[i] · ℓ(f(x_i),
/// signs[i])`. Weights may be negative. Weight decay is not included here.
pub fn weighted_loss_and_grad(
    classifier: &Classifier,
    x: ArrayView2<f64>,
    signs: &[i8],
    weights: &[f64],
    loss: LossKind,
) -> Result<(f64, Vec<f64>), ModelError> {
    if x.nrows() != signs.len() || x.nrows() != weights.len() {
        return Err(ModelError::DimensionMismatch(format!(
            "{} rows vs {} signs vs {} weights",
            x.nrows(),
            signs.len(),
            weights.len()
        )));
    }
    if x.ncols() != classifier.dim() {
        return Err(ModelError::DimensionMismatch(format!(
            "input dim {} vs classifier dim {}",
            x.ncols(),
            classifier.dim()
        )));
    }
    if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(ModelError::InvalidParameter(format!(
            "sign {bad} is not in {{+1, -1}}"
        )));
    }
    if !weights.iter().all(|w| w.is_finite()) {
        return Err(ModelError::NonFinite("weights"));
    }

    let mut value = 0.0;
    let mut grad = vec![0.0; classifier.parameters.len()];
    for ((row, &sign), &w) in x.rows().into_iter().zip(signs).zip(weights) {
        if w == 0.0 {
            continue;
        }
        let z = classifier.score(row)?;
        value += w * loss.value(z, sign);
        let coeff = w * loss.derivative(z, sign);
        match classifier.architecture {
            Architecture::Linear { dim } => {
                for (g, xi) in grad.iter_mut().zip(row) {
                    *g += coeff * xi;
                }
                grad[dim] += coeff;
            }
            Architecture::Mlp { dim, hidden } => {
                let (w1, b1, w2, _) = classifier.mlp_views(dim, hidden);
                for k in 0..hidden {
                    let a: f64 = row
                        .iter()
                        .zip(w1.row(k))
                        .map(|(xi, wi)| xi * wi)
                        .sum::<f64>()
                        + b1[k];
                    let t = a.tanh();
                    // d z / d a_k through the output weight.
                    let back = coeff * w2[k] * (1.0 - t * t);
                    for (g, xi) in grad[k * dim..(k + 1) * dim].iter_mut().zip(row) {
                        *g += back * xi;
                    }
                    grad[hidden * dim + k] += back;
                    grad[hidden * dim + hidden + k] += coeff * t;
                }
                grad[hidden * dim + 2 * hidden] += coeff;
            }
        }
    }
    if !value.is_finite() {
        return Err(ModelError::NonFinite("loss value"));
    }
    if !grad.iter().all(|g| g.is_finite()) {
        return Err(ModelError::NonFinite("gradient"));
    }
    Ok((value, grad))
}

/// Compare the analytic gradient against central finite differences with
/// step `h`; returns the max over coordinates of
/// `|analytic − numeric| / max(1e-8, |analytic| + |numeric|)`.
pub fn finite_diff_check(
    classifier: &Classifier,
    x: ArrayView2<f64>,
    signs: &[i8],
    weights: &[f64],
    loss: LossKind,
    h: f64,
) -> Result<f64, ModelError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(ModelError::InvalidParameter(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let (_, analytic) = weighted_loss_and_grad(classifier, x, signs, weights, loss)?;
    let mut worst: f64 = 0.0;
    let mut perturbed = classifier.clone();
    for j in 0..analytic.len() {
        let original = perturbed.parameters[j];
        perturbed.parameters[j] = original + h;
        let (plus, _) = weighted_loss_and_grad(&perturbed, x, signs, weights, loss)?;
        perturbed.parameters[j] = original - h;
        let (minus, _) = weighted_loss_and_grad(&perturbed, x, signs, weights, loss)?;
        perturbed.parameters[j] = original;
        let numeric = (plus - minus) / (2.0 * h);
        let denom = (analytic[j].abs() + numeric.abs()).max(1e-8);
        worst = worst.max((analytic[j] - numeric).abs() / denom);
    }
    Ok(worst)
}
