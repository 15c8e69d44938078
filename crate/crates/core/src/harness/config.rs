//! Line-oriented `key = value` experiment configs.
//!
//! Blank lines and lines starting with `#` are ignored. List values are
//! comma-separated. Unknown and duplicate keys are rejected so typos fail
//! loudly instead of silently running a default.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::data::{DataError, GaussianMixtureSpec, Setting};
use crate::harness::HarnessError;
use crate::metrics::MetricKind;
use crate::model::{Architecture, LossKind};
use crate::selection::Criterion;

/// Algorithm family selected by a config token. `Pusb` trains the unbiased
/// objective and replaces the sign rule with a quantile threshold at
/// prediction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoFamily {
    UPu,
    NnPu,
    NnPuGa,
    Pusb,
}

/// One algorithm column of the benchmark: a family plus the optional
/// replenishment calibration (`-c` token suffix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmSpec {
    pub token: String,
    pub family: AlgoFamily,
    pub calibrated: bool,
}

impl std::str::FromStr for AlgorithmSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let token = s.trim().to_ascii_lowercase();
        let (family, calibrated) = match token.as_str() {
            "upu" => (AlgoFamily::UPu, false),
            "upu-c" => (AlgoFamily::UPu, true),
            "nnpu" => (AlgoFamily::NnPu, false),
            "nnpu-c" => (AlgoFamily::NnPu, true),
            "nnpu-ga" => (AlgoFamily::NnPuGa, false),
            "nnpu-ga-c" => (AlgoFamily::NnPuGa, true),
            "pusb" => (AlgoFamily::Pusb, false),
            "pusb-c" => (AlgoFamily::Pusb, true),
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown algorithm `{other}` (expected upu, nnpu, nnpu-ga, or pusb, \
                     optionally with a -c suffix)"
                )))
            }
        };
        Ok(Self {
            token,
            family,
            calibrated,
        })
    }
}

/// Scorer architecture choice; the input dimension comes from the dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSpec {
    Linear,
    Mlp { hidden: usize },
}

impl ModelSpec {
    pub fn architecture(&self, dim: usize) -> Architecture {
        match *self {
            ModelSpec::Linear => Architecture::Linear { dim },
            ModelSpec::Mlp { hidden } => Architecture::Mlp { dim, hidden },
        }
    }
}

/// Synthetic Gaussian-mixture dataset parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthDataset {
    pub mean_pos: Vec<f64>,
    pub mean_neg: Vec<f64>,
    pub scale_pos: f64,
    pub scale_neg: f64,
    /// Marginal draw size for the OS setting.
    pub n: Option<usize>,
    /// Positive / unlabeled pool sizes for the TS setting.
    pub n_p: Option<usize>,
    pub n_u: Option<usize>,
    pub test_n: usize,
}

impl SynthDataset {
    pub fn dim(&self) -> usize {
        self.mean_pos.len()
    }

    pub fn mixture_spec(&self, prior: f64) -> Result<GaussianMixtureSpec, DataError> {
        GaussianMixtureSpec::new(
            self.mean_pos.clone(),
            self.mean_neg.clone(),
            self.scale_pos,
            self.scale_neg,
            prior,
        )
    }
}

/// Where the experiment's data comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSource {
    Synth(SynthDataset),
    Csv { train: PathBuf, test: PathBuf },
}

/// Sweep over one scalar config field, re-running the benchmark per value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: SweepKey,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    /// Label frequency sweep (OS setting).
    C,
    /// Positive pool size sweep (TS setting).
    Np,
}

impl SweepKey {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKey::C => "c",
            SweepKey::Np => "np",
        }
    }
}

/// Fully parsed and validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub dataset: DatasetSource,
    pub setting: Setting,
    pub prior: f64,
    pub label_frequency: Option<f64>,
    pub val_rate: f64,
    pub algorithms: Vec<AlgorithmSpec>,
    pub loss: LossKind,
    pub model: ModelSpec,
    pub iterations: usize,
    pub eval_every: usize,
    pub splits: usize,
    pub draws: usize,
    pub criteria: Vec<Criterion>,
    pub metrics: Vec<MetricKind>,
    pub oracle_mode: bool,
    /// Worker-pool size; 0 uses one worker per logical CPU.
    pub threads: usize,
    pub out_dir: PathBuf,
    pub sweep: Option<SweepSpec>,
}

/// Key-value store from one pass over the file, with duplicate detection.
struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(HarnessError::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if entries.insert(key.clone(), value).is_some() {
                return Err(HarnessError::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(Self { entries })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    fn finish(self) -> Result<(), HarnessError> {
        if let Some(key) = self.entries.keys().next() {
            return Err(HarnessError::Config(format!("unknown key `{key}`")));
        }
        Ok(())
    }
}

fn bad(key: &str, value: &str, want: &str) -> HarnessError {
    HarnessError::Config(format!("key `{key}`: `{value}` is not {want}"))
}

fn parse_scalar<T: std::str::FromStr>(
    raw: &mut RawConfig,
    key: &str,
    want: &str,
) -> Result<Option<T>, HarnessError> {
    match raw.take(key) {
        None => Ok(None),
        Some(v) => v.parse::<T>().map(Some).map_err(|_| bad(key, &v, want)),
    }
}

fn parse_float_list(raw: &mut RawConfig, key: &str) -> Result<Option<Vec<f64>>, HarnessError> {
    match raw.take(key) {
        None => Ok(None),
        Some(v) => v
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(key, tok.trim(), "a number"))
            })
            .collect::<Result<Vec<f64>, _>>()
            .map(Some),
    }
}

fn parse_bool(raw: &mut RawConfig, key: &str) -> Result<Option<bool>, HarnessError> {
    match raw.take(key) {
        None => Ok(None),
        Some(v) => match v.as_str() {
            "true" => Ok(Some(true)),
            "false" => Ok(Some(false)),
            other => Err(bad(key, other, "true or false")),
        },
    }
}

impl ExperimentConfig {
    /// Parse and validate a config from its file content.
    pub fn from_str(text: &str) -> Result<Self, HarnessError> {
        let mut raw = RawConfig::parse(text)?;

        let master_seed: u64 =
            parse_scalar(&mut raw, "seed", "an unsigned integer")?.unwrap_or(0);
        let setting: Setting = raw
            .take("setting")
            .ok_or_else(|| HarnessError::Config("missing key `setting`".into()))?
            .parse()
            .map_err(|e| HarnessError::Config(format!("key `setting`: {e}")))?;
        let prior: f64 = parse_scalar(&mut raw, "pi", "a number")?
            .ok_or_else(|| HarnessError::Config("missing key `pi`".into()))?;
        let label_frequency: Option<f64> = parse_scalar(&mut raw, "c", "a number")?;
        let val_rate: f64 = parse_scalar(&mut raw, "val_rate", "a number")?.unwrap_or(0.2);

        let algorithms: Vec<AlgorithmSpec> = raw
            .take("algo")
            .ok_or_else(|| HarnessError::Config("missing key `algo`".into()))?
            .split(',')
            .map(|tok| tok.parse())
            .collect::<Result<_, _>>()?;

        let loss: LossKind = match raw.take("loss") {
            None => LossKind::Logistic,
            Some(v) => v
                .parse()
                .map_err(|e| HarnessError::Config(format!("key `loss`: {e}")))?,
        };

        let hidden: usize = parse_scalar(&mut raw, "hidden", "a positive integer")?.unwrap_or(10);
        let model = match raw.take("model").as_deref() {
            None | Some("linear") => ModelSpec::Linear,
            Some("mlp") => ModelSpec::Mlp { hidden },
            Some(other) => return Err(bad("model", other, "linear or mlp")),
        };

        let iterations: usize =
            parse_scalar(&mut raw, "iterations", "a positive integer")?.unwrap_or(2000);
        let eval_every: usize =
            parse_scalar(&mut raw, "eval_every", "a positive integer")?.unwrap_or(100);
        let splits: usize = parse_scalar(&mut raw, "splits", "a positive integer")?.unwrap_or(3);
        let draws: usize = parse_scalar(&mut raw, "draws", "a positive integer")?.unwrap_or(10);

        let criteria: Vec<Criterion> = match raw.take("criteria") {
            None => vec![Criterion::Pa, Criterion::Pauc],
            Some(v) => v
                .split(',')
                .map(|tok| {
                    tok.parse()
                        .map_err(|e| HarnessError::Config(format!("key `criteria`: {e}")))
                })
                .collect::<Result<_, _>>()?,
        };
        let metrics: Vec<MetricKind> = match raw.take("metrics") {
            None => MetricKind::ALL.to_vec(),
            Some(v) => v
                .split(',')
                .map(|tok| {
                    tok.parse()
                        .map_err(|e| HarnessError::Config(format!("key `metrics`: {e}")))
                })
                .collect::<Result<_, _>>()?,
        };

        let oracle_mode = parse_bool(&mut raw, "oracle_mode")?.unwrap_or(false);
        let threads: usize = parse_scalar(&mut raw, "threads", "an unsigned integer")?.unwrap_or(0);
        let out_dir = PathBuf::from(raw.take("out").unwrap_or_else(|| "out".into()));

        let dataset = Self::parse_dataset(&mut raw)?;
        let sweep = Self::parse_sweep(&mut raw)?;
        raw.finish()?;

        let config = Self {
            master_seed,
            dataset,
            setting,
            prior,
            label_frequency,
            val_rate,
            algorithms,
            loss,
            model,
            iterations,
            eval_every,
            splits,
            draws,
            criteria,
            metrics,
            oracle_mode,
            threads,
            out_dir,
            sweep,
        };
        config.validate()?;
        Ok(config)
    }

    fn parse_dataset(raw: &mut RawConfig) -> Result<DatasetSource, HarnessError> {
        match raw.take("dataset.kind").as_deref() {
            Some("csv") => {
                let train = raw.take("dataset.train").ok_or_else(|| {
                    HarnessError::Config("csv dataset needs `dataset.train`".into())
                })?;
                let test = raw.take("dataset.test").ok_or_else(|| {
                    HarnessError::Config("csv dataset needs `dataset.test`".into())
                })?;
                Ok(DatasetSource::Csv {
                    train: PathBuf::from(train),
                    test: PathBuf::from(test),
                })
            }
            None | Some("synth") => {
                let mean_pos = parse_float_list(raw, "dataset.mean_pos")?.ok_or_else(|| {
                    HarnessError::Config("synthetic dataset needs `dataset.mean_pos`".into())
                })?;
                let mean_neg = parse_float_list(raw, "dataset.mean_neg")?.ok_or_else(|| {
                    HarnessError::Config("synthetic dataset needs `dataset.mean_neg`".into())
                })?;
                if let Some(dim) = parse_scalar::<usize>(raw, "dataset.dim", "a positive integer")?
                {
                    if dim != mean_pos.len() {
                        return Err(HarnessError::Config(format!(
                            "dataset.dim = {dim} but mean vectors have length {}",
                            mean_pos.len()
                        )));
                    }
                }
                Ok(DatasetSource::Synth(SynthDataset {
                    mean_pos,
                    mean_neg,
                    scale_pos: parse_scalar(raw, "dataset.scale_pos", "a number")?.unwrap_or(1.0),
                    scale_neg: parse_scalar(raw, "dataset.scale_neg", "a number")?.unwrap_or(1.0),
                    n: parse_scalar(raw, "dataset.n", "a positive integer")?,
                    n_p: parse_scalar(raw, "dataset.np", "a positive integer")?,
                    n_u: parse_scalar(raw, "dataset.nu", "a positive integer")?,
                    test_n: parse_scalar(raw, "dataset.test_n", "a positive integer")?
                        .unwrap_or(10_000),
                }))
            }
            Some(other) => Err(bad("dataset.kind", other, "synth or csv")),
        }
    }

    fn parse_sweep(raw: &mut RawConfig) -> Result<Option<SweepSpec>, HarnessError> {
        let Some(value) = raw.take("sweep") else {
            return Ok(None);
        };
        let Some((name, list)) = value.split_once(':') else {
            return Err(bad("sweep", &value, "of the form `c: v1, v2, ...`"));
        };
        let key = match name.trim() {
            "c" => SweepKey::C,
            "np" => SweepKey::Np,
            other => return Err(bad("sweep", other, "c or np")),
        };
        let values: Vec<f64> = list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| bad("sweep", tok.trim(), "a number"))
            })
            .collect::<Result<_, _>>()?;
        if values.is_empty() {
            return Err(HarnessError::Config("sweep needs at least one value".into()));
        }
        Ok(Some(SweepSpec { key, values }))
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: String| Err(HarnessError::Config(msg));
        if !(self.prior > 0.0 && self.prior < 1.0) {
            return fail(format!("pi must lie in (0, 1), got {}", self.prior));
        }
        if !(self.val_rate > 0.0 && self.val_rate < 1.0) {
            return fail(format!("val_rate must lie in (0, 1), got {}", self.val_rate));
        }
        if self.eval_every == 0 || self.iterations < self.eval_every {
            return fail(format!(
                "need iterations ≥ eval_every ≥ 1, got {} and {}",
                self.iterations, self.eval_every
            ));
        }
        if self.splits == 0 || self.draws == 0 {
            return fail("splits and draws must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return fail("need at least one algorithm".into());
        }
        if self.criteria.is_empty() || self.metrics.is_empty() {
            return fail("criteria and metrics must be nonempty".into());
        }
        if self.criteria.iter().any(Criterion::needs_oracle) && !self.oracle_mode {
            return fail("criterion `oa` requires `oracle_mode = true`".into());
        }
        match self.setting {
            Setting::Os => match self.label_frequency {
                Some(c) if c > 0.0 && c <= 1.0 => {}
                Some(c) => return fail(format!("c must lie in (0, 1], got {c}")),
                None => return fail("OS setting requires key `c`".into()),
            },
            Setting::Ts => {
                if self.label_frequency.is_some() {
                    return fail("key `c` only applies to the OS setting".into());
                }
            }
        }
        if let DatasetSource::Synth(synth) = &self.dataset {
            if synth.mean_pos.len() != synth.mean_neg.len() || synth.mean_pos.is_empty() {
                return fail(format!(
                    "mean vectors must be nonempty and equal length, got {} and {}",
                    synth.mean_pos.len(),
                    synth.mean_neg.len()
                ));
            }
            match self.setting {
                Setting::Os => {
                    if synth.n.is_none() {
                        return fail("OS synthetic dataset needs `dataset.n`".into());
                    }
                    if synth.n_p.is_some() || synth.n_u.is_some() {
                        return fail("`dataset.np`/`dataset.nu` only apply to TS".into());
                    }
                }
                Setting::Ts => {
                    if synth.n_p.is_none() || synth.n_u.is_none() {
                        return fail("TS synthetic dataset needs `dataset.np` and `dataset.nu`".into());
                    }
                    if synth.n.is_some() {
                        return fail("`dataset.n` only applies to OS".into());
                    }
                }
            }
        }
        if let Some(sweep) = &self.sweep {
            match sweep.key {
                SweepKey::C => {
                    if self.setting != Setting::Os {
                        return fail("sweep over c requires the OS setting".into());
                    }
                    if sweep.values.iter().any(|&v| !(v > 0.0 && v <= 1.0)) {
                        return fail("sweep values for c must lie in (0, 1]".into());
                    }
                }
                SweepKey::Np => {
                    if self.setting != Setting::Ts {
                        return fail("sweep over np requires the TS setting".into());
                    }
                    if !matches!(self.dataset, DatasetSource::Synth(_)) {
                        return fail("sweep over np requires a synthetic dataset".into());
                    }
                    if sweep
                        .values
                        .iter()
                        .any(|&v| v < 1.0 || v.fract() != 0.0 || v > 1e9)
                    {
                        return fail("sweep values for np must be positive integers".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy of the config with one sweep value applied and the sweep
    /// removed.
    pub fn at_sweep_value(&self, key: SweepKey, value: f64) -> Self {
        let mut cfg = self.clone();
        cfg.sweep = None;
        match key {
            SweepKey::C => cfg.label_frequency = Some(value),
            SweepKey::Np => {
                if let DatasetSource::Synth(synth) = &mut cfg.dataset {
                    synth.n_p = Some(value as usize);
                }
            }
        }
        cfg
    }
}

/// Description of a synthetic dataset to materialize as CSV files: the
/// config keys `seed`, `setting`, `pi`, `c`, and `dataset.*`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub master_seed: u64,
    pub setting: Setting,
    pub prior: f64,
    pub label_frequency: Option<f64>,
    pub dataset: SynthDataset,
}

impl SynthSpec {
    pub fn from_str(text: &str) -> Result<Self, HarnessError> {
        let mut raw = RawConfig::parse(text)?;
        let master_seed: u64 =
            parse_scalar(&mut raw, "seed", "an unsigned integer")?.unwrap_or(0);
        let setting: Setting = raw
            .take("setting")
            .ok_or_else(|| HarnessError::Config("missing key `setting`".into()))?
            .parse()
            .map_err(|e| HarnessError::Config(format!("key `setting`: {e}")))?;
        let prior: f64 = parse_scalar(&mut raw, "pi", "a number")?
            .ok_or_else(|| HarnessError::Config("missing key `pi`".into()))?;
        let label_frequency: Option<f64> = parse_scalar(&mut raw, "c", "a number")?;
        let dataset = match ExperimentConfig::parse_dataset(&mut raw)? {
            DatasetSource::Synth(synth) => synth,
            DatasetSource::Csv { .. } => {
                return Err(HarnessError::Config(
                    "`synth` expects a synthetic dataset, not `dataset.kind = csv`".into(),
                ))
            }
        };
        raw.finish()?;

        let spec = Self {
            master_seed,
            setting,
            prior,
            label_frequency,
            dataset,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: String| Err(HarnessError::Config(msg));
        if !(self.prior > 0.0 && self.prior < 1.0) {
            return fail(format!("pi must lie in (0, 1), got {}", self.prior));
        }
        if self.dataset.mean_pos.len() != self.dataset.mean_neg.len()
            || self.dataset.mean_pos.is_empty()
        {
            return fail("mean vectors must be nonempty and equal length".into());
        }
        match self.setting {
            Setting::Os => {
                match self.label_frequency {
                    Some(c) if c > 0.0 && c <= 1.0 => {}
                    Some(c) => return fail(format!("c must lie in (0, 1], got {c}")),
                    None => return fail("OS setting requires key `c`".into()),
                }
                if self.dataset.n.is_none() {
                    return fail("OS synthetic dataset needs `dataset.n`".into());
                }
                if self.dataset.n_p.is_some() || self.dataset.n_u.is_some() {
                    return fail("`dataset.np`/`dataset.nu` only apply to TS".into());
                }
            }
            Setting::Ts => {
                if self.label_frequency.is_some() {
                    return fail("key `c` only applies to the OS setting".into());
                }
                if self.dataset.n_p.is_none() || self.dataset.n_u.is_none() {
                    return fail("TS synthetic dataset needs `dataset.np` and `dataset.nu`".into());
                }
                if self.dataset.n.is_some() {
                    return fail("`dataset.n` only applies to OS".into());
                }
            }
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> String {
        "\
seed = 7
setting = OS
pi = 0.5
c = 0.4
val_rate = 0.25
algo = upu, upu-c, nnpu-ga-c
loss = sigmoid
model = mlp
hidden = 6
iterations = 400
eval_every = 100
splits = 2
draws = 3
criteria = pa, pauc
metrics = acc, f1
oracle_mode = false
out = results
dataset.kind = synth
dataset.dim = 2
dataset.mean_pos = 1.4, 0
dataset.mean_neg = -1.4, 0
dataset.n = 1000
dataset.test_n = 500
"
        .to_string()
    }

    #[test]
    fn full_config_parses() {
        let cfg = ExperimentConfig::from_str(&base_config()).unwrap();
        assert_eq!(cfg.master_seed, 7);
        assert_eq!(cfg.setting, Setting::Os);
        assert_eq!(cfg.label_frequency, Some(0.4));
        assert_eq!(cfg.algorithms.len(), 3);
        assert_eq!(cfg.algorithms[2].family, AlgoFamily::NnPuGa);
        assert!(cfg.algorithms[2].calibrated);
        assert_eq!(cfg.loss, LossKind::Sigmoid);
        assert_eq!(cfg.model, ModelSpec::Mlp { hidden: 6 });
        assert_eq!(cfg.criteria, vec![Criterion::Pa, Criterion::Pauc]);
        assert_eq!(cfg.metrics, vec![MetricKind::Acc, MetricKind::F1]);
        assert_eq!(cfg.out_dir, PathBuf::from("results"));
        let DatasetSource::Synth(synth) = &cfg.dataset else {
            panic!("expected synthetic source");
        };
        assert_eq!(synth.dim(), 2);
        assert_eq!(synth.n, Some(1000));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# header comment\n\n{}# trailing comment\n", base_config());
        assert!(ExperimentConfig::from_str(&text).is_ok());
    }

    #[test]
    fn defaults_fill_optional_keys() {
        let cfg = ExperimentConfig::from_str(
            "setting = TS\npi = 0.3\nalgo = upu\n\
             dataset.mean_pos = 1\ndataset.mean_neg = -1\ndataset.np = 50\ndataset.nu = 200\n",
        )
        .unwrap();
        assert_eq!(cfg.master_seed, 0);
        assert_eq!(cfg.iterations, 2000);
        assert_eq!(cfg.eval_every, 100);
        assert_eq!(cfg.splits, 3);
        assert_eq!(cfg.draws, 10);
        assert_eq!(cfg.loss, LossKind::Logistic);
        assert_eq!(cfg.model, ModelSpec::Linear);
        assert_eq!(cfg.metrics.len(), 5);
        assert!(!cfg.oracle_mode);
    }

    #[test]
    fn rejection_cases() {
        let cases: Vec<(&str, String)> = vec![
            ("unknown key", base_config() + "bogus = 1\n"),
            ("duplicate key", base_config() + "seed = 8\n"),
            ("missing setting", "pi = 0.5\nalgo = upu\n".into()),
            ("bad algo", base_config().replace("algo = upu, upu-c, nnpu-ga-c", "algo = svm")),
            ("oa without oracle mode", base_config().replace("criteria = pa, pauc", "criteria = oa")),
            ("eval cadence", base_config().replace("iterations = 400", "iterations = 50")),
            ("os without c", base_config().replace("c = 0.4\n", "")),
            ("ts with c", base_config().replace("setting = OS", "setting = TS")),
            ("bad pi", base_config().replace("pi = 0.5", "pi = 1.5")),
            ("dim mismatch", base_config().replace("dataset.dim = 2", "dataset.dim = 3")),
            ("no equals sign", base_config() + "just some words\n"),
            (
                "sweep on wrong setting",
                base_config().replace("setting = OS", "setting = TS") + "sweep = c: 0.2\n",
            ),
        ];
        for (what, text) in cases {
            let result = ExperimentConfig::from_str(&text);
            assert!(
                matches!(result, Err(HarnessError::Config(_))),
                "case `{what}` should be rejected, got {result:?}"
            );
        }
    }

    #[test]
    fn sweep_parses_and_applies() {
        let cfg =
            ExperimentConfig::from_str(&(base_config() + "sweep = c: 0.2, 0.4, 0.8\n")).unwrap();
        let sweep = cfg.sweep.clone().unwrap();
        assert_eq!(sweep.key, SweepKey::C);
        assert_eq!(sweep.values, vec![0.2, 0.4, 0.8]);
        let swept = cfg.at_sweep_value(SweepKey::C, 0.8);
        assert_eq!(swept.label_frequency, Some(0.8));
        assert!(swept.sweep.is_none());
    }

    #[test]
    fn csv_source_parses() {
        let cfg = ExperimentConfig::from_str(
            "setting = TS\npi = 0.4\nalgo = upu\n\
             dataset.kind = csv\ndataset.train = tr.csv\ndataset.test = te.csv\n",
        )
        .unwrap();
        assert_eq!(
            cfg.dataset,
            DatasetSource::Csv {
                train: PathBuf::from("tr.csv"),
                test: PathBuf::from("te.csv"),
            }
        );
    }
}
