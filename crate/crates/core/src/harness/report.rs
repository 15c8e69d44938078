//! Aggregation of trial records and report files.
//!
//! Everything here is a pure function of the trial records, so `report`
//! regenerated from `trials.jsonl` is byte-identical to the files the
//! benchmark run wrote. Column order is canonical (criteria pa, pauc, oa;
//! metrics acc, auc, f1, precision, recall), rows follow the config's
//! algorithm order, and sweep points are emitted in ascending value order.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::harness::{HarnessError, SweepPoint, TrialResult};
use crate::metrics::MetricKind;
use crate::selection::Criterion;

/// Mean and population standard deviation over the splits that produced a
/// value for this cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryCell {
    pub mean: f64,
    pub std: f64,
    pub n_splits: usize,
}

/// One benchmark summary: algorithms × (criterion, metric) cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub algorithms: Vec<String>,
    pub criteria: Vec<Criterion>,
    pub metrics: Vec<MetricKind>,
    /// Keyed by (row index into `algorithms`, criterion, metric). Absent
    /// keys render as `NA`.
    pub cells: BTreeMap<(usize, Criterion, MetricKind), SummaryCell>,
}

/// Summaries of one sweep, one point per swept value, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub name: String,
    pub points: Vec<(f64, SummaryTable)>,
}

/// Result of aggregating a trial list: a plain summary, sweep tables, or
/// both (when the list mixes tagged and untagged trials).
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateOutput {
    pub summary: Option<SummaryTable>,
    pub sweeps: Vec<SweepTable>,
    pub warnings: Vec<String>,
}

/// For one algorithm, criterion, and split: the best (draw, checkpoint)
/// pair by validation value, ties toward the earliest draw and earliest
/// checkpoint. Returns that trial's test metrics for the criterion.
fn best_for_split<'a>(
    trials: &[&'a TrialResult],
    algo_index: usize,
    criterion: Criterion,
    split_index: usize,
) -> Option<&'a TrialResult> {
    let mut candidates: Vec<&TrialResult> = trials
        .iter()
        .filter(|t| {
            t.failed.is_none()
                && t.algo_index == algo_index
                && t.split_index == split_index
                && t.selected.contains_key(criterion.as_str())
        })
        .copied()
        .collect();
    candidates.sort_by_key(|t| t.draw_index);
    let mut best: Option<(&TrialResult, f64)> = None;
    for trial in candidates {
        let idx = trial.selected[criterion.as_str()];
        let value = trial.checkpoints[idx]
            .criterion_value(criterion)
            .expect("selected checkpoint evaluated its criterion");
        match best {
            Some((_, bv)) if !(value > bv) => {}
            _ => best = Some((trial, value)),
        }
    }
    best.map(|(t, _)| t)
}

fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn aggregate_group(trials: &[&TrialResult], warnings: &mut Vec<String>) -> SummaryTable {
    let mut rows: BTreeMap<usize, String> = BTreeMap::new();
    let mut criteria: std::collections::BTreeSet<Criterion> = Default::default();
    let mut metrics: std::collections::BTreeSet<MetricKind> = Default::default();
    let mut n_splits = 0;
    for t in trials {
        rows.entry(t.algo_index).or_insert_with(|| t.algorithm.clone());
        n_splits = n_splits.max(t.split_index + 1);
        for key in t.selected.keys() {
            if let Ok(c) = key.parse::<Criterion>() {
                criteria.insert(c);
            }
        }
        for key in t.summary.keys() {
            if let Some((_, metric)) = key.split_once(':') {
                if let Ok(m) = metric.parse::<MetricKind>() {
                    metrics.insert(m);
                }
            }
        }
    }

    let mut table = SummaryTable {
        algorithms: rows.values().cloned().collect(),
        criteria: criteria.into_iter().collect(),
        metrics: metrics.into_iter().collect(),
        cells: BTreeMap::new(),
    };

    for (row, (&algo_index, token)) in rows.iter().enumerate() {
        for &criterion in &table.criteria {
            let mut per_metric: BTreeMap<MetricKind, Vec<f64>> = BTreeMap::new();
            for split in 0..n_splits {
                let Some(best) = best_for_split(trials, algo_index, criterion, split) else {
                    continue;
                };
                for &metric in &table.metrics {
                    let key = format!("{}:{}", criterion.as_str(), metric.as_str());
                    if let Some(&value) = best.summary.get(&key) {
                        per_metric.entry(metric).or_default().push(value);
                    }
                }
            }
            if per_metric.is_empty() {
                warnings.push(format!(
                    "no successful trials for `{token}` under criterion `{}`",
                    criterion.as_str()
                ));
            }
            for (metric, values) in per_metric {
                let (mean, std) = mean_and_population_std(&values);
                table.cells.insert(
                    (row, criterion, metric),
                    SummaryCell {
                        mean,
                        std,
                        n_splits: values.len(),
                    },
                );
            }
        }
    }
    table
}

/// Aggregate trial records into summary and sweep tables.
pub fn aggregate(trials: &[TrialResult]) -> AggregateOutput {
    let mut warnings = Vec::new();
    let failed = trials.iter().filter(|t| t.failed.is_some()).count();
    if failed > 0 {
        warnings.push(format!("{failed} of {} trials failed", trials.len()));
    }

    let plain: Vec<&TrialResult> = trials.iter().filter(|t| t.sweep.is_none()).collect();
    let summary = if plain.is_empty() && trials.iter().any(|t| t.sweep.is_some()) {
        None
    } else {
        let table = aggregate_group(&plain, &mut warnings);
        if table.cells.is_empty() {
            warnings.push("summary is empty: no trial produced a selected checkpoint".into());
        }
        Some(table)
    };

    let mut sweeps: Vec<SweepTable> = Vec::new();
    let mut grouped: BTreeMap<String, Vec<(f64, Vec<&TrialResult>)>> = BTreeMap::new();
    for trial in trials {
        let Some(SweepPoint { name, value }) = &trial.sweep else {
            continue;
        };
        let groups = grouped.entry(name.clone()).or_default();
        match groups.iter_mut().find(|(v, _)| v == value) {
            Some((_, bucket)) => bucket.push(trial),
            None => groups.push((*value, vec![trial])),
        }
    }
    for (name, mut groups) in grouped {
        groups.sort_by(|a, b| a.0.total_cmp(&b.0));
        let points = groups
            .into_iter()
            .map(|(value, bucket)| (value, aggregate_group(&bucket, &mut warnings)))
            .collect();
        sweeps.push(SweepTable { name, points });
    }

    AggregateOutput {
        summary,
        sweeps,
        warnings,
    }
}

fn format_cell(cell: Option<&SummaryCell>) -> String {
    match cell {
        Some(c) => format!("{:.6}±{:.6}", c.mean, c.std),
        None => "NA".into(),
    }
}

/// Render `summary.csv`: one row per algorithm, one `criterion:metric`
/// column pair per cell, cells as `mean±std` with six decimals. An empty
/// table renders as the header line alone.
pub fn render_summary_csv(table: &SummaryTable) -> String {
    let mut out = String::from("algorithm");
    for criterion in &table.criteria {
        for metric in &table.metrics {
            out.push(',');
            out.push_str(criterion.as_str());
            out.push(':');
            out.push_str(metric.as_str());
        }
    }
    out.push('\n');
    if table.criteria.is_empty() || table.metrics.is_empty() {
        return out;
    }
    for (row, token) in table.algorithms.iter().enumerate() {
        out.push_str(token);
        for &criterion in &table.criteria {
            for &metric in &table.metrics {
                out.push(',');
                out.push_str(&format_cell(table.cells.get(&(row, criterion, metric))));
            }
        }
        out.push('\n');
    }
    out
}

/// Render `sweep_<name>.csv` in long format, one row per
/// (value, algorithm, criterion, metric).
pub fn render_sweep_csv(sweep: &SweepTable) -> String {
    let mut out = String::from("value,algorithm,criterion,metric,mean,std\n");
    for (value, table) in &sweep.points {
        for (row, token) in table.algorithms.iter().enumerate() {
            for &criterion in &table.criteria {
                for &metric in &table.metrics {
                    let cell = table.cells.get(&(row, criterion, metric));
                    let (mean, std) = match cell {
                        Some(c) => (format!("{:.6}", c.mean), format!("{:.6}", c.std)),
                        None => ("NA".into(), "NA".into()),
                    };
                    out.push_str(&format!(
                        "{value},{token},{},{},{mean},{std}\n",
                        criterion.as_str(),
                        metric.as_str()
                    ));
                }
            }
        }
    }
    out
}

fn io_err(path: &Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Write `trials.jsonl` plus `summary.csv` and/or `sweep_<name>.csv` into
/// `out_dir`, creating it if needed. Returns the written paths.
pub fn emit_report(
    out_dir: &Path,
    trials: &[TrialResult],
    agg: &AggregateOutput,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    let mut written = Vec::new();

    let trials_path = out_dir.join("trials.jsonl");
    let mut lines = String::new();
    for trial in trials {
        lines.push_str(&serde_json::to_string(trial)?);
        lines.push('\n');
    }
    fs::write(&trials_path, lines).map_err(|e| io_err(&trials_path, e))?;
    written.push(trials_path);

    if let Some(table) = &agg.summary {
        let path = out_dir.join("summary.csv");
        fs::write(&path, render_summary_csv(table)).map_err(|e| io_err(&path, e))?;
        written.push(path);
    }
    for sweep in &agg.sweeps {
        let path = out_dir.join(format!("sweep_{}.csv", sweep.name));
        fs::write(&path, render_sweep_csv(sweep)).map_err(|e| io_err(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Read trial records back from a `trials.jsonl` file.
pub fn read_trials(path: &Path) -> Result<Vec<TrialResult>, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(HarnessError::from))
        .collect()
}
