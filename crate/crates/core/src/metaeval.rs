//! Correlating system rankings against human judgments.
//!
//! [`pearson`] and [`spearman`] are the two supported coefficients;
//! Spearman is defined as Pearson over fractional ranks, so tied values
//! share the average of the ranks they occupy. [`window_analysis`] slides
//! a fixed-size window down the human ranking and reports both
//! coefficients per contiguous block, which shows where along the quality
//! range a metric agrees with humans. [`metaeval_report`] compares one or
//! more ranking reports against a human ranking side by side, silently
//! restricted (with warnings) to the systems they share.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rating::RankingReport;

fn validate_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::UnequalLengths {
            x: x.len(),
            y: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooFewValues(x.len()));
    }
    for (values, input) in [(x, "x"), (y, "y")] {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput { input });
        }
        if values.iter().all(|v| *v == values[0]) {
            return Err(Error::ZeroVariance { input });
        }
    }
    Ok(())
}

/// Pearson product-moment correlation in `[-1, 1]`.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    validate_pair(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let mut denom = (sxx * syy).sqrt();
    if !denom.is_finite() {
        denom = sxx.sqrt() * syy.sqrt();
    }
    Ok((sxy / denom).clamp(-1.0, 1.0))
}

/// Fractional ranks: the smallest value gets rank 1 and tied values share
/// the average of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation: Pearson over fractional ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    validate_pair(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

/// A human evaluation result: systems with their human scores, ranked by
/// score (descending, names breaking ties), with an optional tag naming
/// the evaluation the scores came from.
#[derive(Debug, Clone, PartialEq)]
pub struct HumanRanking {
    entries: Vec<(String, f64)>,
    source: Option<String>,
}

impl HumanRanking {
    pub fn new(entries: Vec<(String, f64)>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooFewValues(entries.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for (name, score) in &entries {
            if name.is_empty() {
                return Err(Error::EmptySystemName);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateSystemName(name.clone()));
            }
            if !score.is_finite() {
                return Err(Error::NonFiniteScore {
                    system: name.clone(),
                    line: 0,
                });
            }
        }
        Ok(Self {
            entries,
            source: None,
        })
    }

    /// Tags the ranking with the evaluation it came from.
    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// Reads a CSV file with the exact header `system,score`.
    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let display = path.display().to_string();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_path(path)
            .map_err(|e| Error::malformed(&display, e))?;
        let headers = reader
            .headers()
            .map_err(|e| Error::malformed(&display, e))?;
        if headers != vec!["system", "score"] {
            return Err(Error::malformed(
                &display,
                format!("expected header \"system,score\", found {headers:?}"),
            ));
        }
        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| Error::malformed(&display, e))?;
            if record.len() != 2 {
                return Err(Error::ParseError {
                    path: display.clone(),
                    line,
                    content: record.iter().collect::<Vec<_>>().join(","),
                });
            }
            let score: f64 = record[1].trim().parse().map_err(|_| Error::ParseError {
                path: display.clone(),
                line,
                content: record[1].to_string(),
            })?;
            if !score.is_finite() {
                return Err(Error::NonFiniteScore {
                    system: record[0].to_string(),
                    line,
                });
            }
            entries.push((record[0].to_string(), score));
        }
        let ranking = Self::new(entries)?;
        Ok(match path.file_stem().and_then(|s| s.to_str()) {
            Some(stem) => ranking.with_source(stem),
            None => ranking,
        })
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered best-first by human score, names breaking ties.
    pub fn sorted_by_rank(&self) -> Vec<(String, f64)> {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        sorted
    }
}

/// Correlations of one contiguous block of the human ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRow {
    pub start_rank: usize,
    pub pearson: f64,
    pub spearman: f64,
}

/// Sliding-window correlations, one row per block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub window: usize,
    pub rows: Vec<WindowRow>,
}

impl WindowReport {
    /// CSV with the header `start_rank,pearson,spearman`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("start_rank,pearson,spearman\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.start_rank, row.pearson, row.spearman
            ));
        }
        out
    }

    /// Plot-ready parallel arrays.
    pub fn to_plot_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": self.window,
            "start_ranks": self.rows.iter().map(|r| r.start_rank).collect::<Vec<_>>(),
            "pearson": self.rows.iter().map(|r| r.pearson).collect::<Vec<_>>(),
            "spearman": self.rows.iter().map(|r| r.spearman).collect::<Vec<_>>(),
        })
    }
}

fn windows_over(
    human_sorted: &[(String, f64)],
    metric_scores: &HashMap<&str, f64>,
    window: usize,
) -> Result<WindowReport> {
    let n = human_sorted.len();
    if window < 2 {
        return Err(Error::WindowTooSmall(window));
    }
    if window > n {
        return Err(Error::WindowTooLarge { window, systems: n });
    }
    let human_scores: Vec<f64> = human_sorted.iter().map(|(_, s)| *s).collect();
    let mut metric: Vec<f64> = Vec::with_capacity(n);
    for (name, _) in human_sorted {
        metric.push(
            *metric_scores
                .get(name.as_str())
                .ok_or_else(|| Error::UnknownSystem(name.clone()))?,
        );
    }
    let mut rows = Vec::with_capacity(n - window + 1);
    for start in 0..=(n - window) {
        let h = &human_scores[start..start + window];
        let m = &metric[start..start + window];
        rows.push(WindowRow {
            start_rank: start + 1,
            pearson: pearson(h, m)?,
            spearman: spearman(h, m)?,
        });
    }
    Ok(WindowReport { window, rows })
}

/// Slides a window of `window` systems down the human ranking and
/// correlates each block against the report's primary scores. The report
/// must cover every system in the human ranking.
pub fn window_analysis(
    human: &HumanRanking,
    report: &RankingReport,
    window: usize,
) -> Result<WindowReport> {
    windows_over(&human.sorted_by_rank(), &report.scores_by_name(), window)
}

/// One row of a meta-evaluation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaEvalRow {
    pub report: String,
    pub method: String,
    pub scope: String,
    pub pearson: f64,
    pub spearman: f64,
}

/// Meta-evaluation of one or more reports against one human ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaEvalTable {
    pub rows: Vec<MetaEvalRow>,
    pub warnings: Vec<String>,
}

impl MetaEvalTable {
    /// CSV with the header `report,method,scope,pearson,spearman`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("report,method,scope,pearson,spearman\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.report, row.method, row.scope, row.pearson, row.spearman
            ));
        }
        out
    }
}

/// Correlates each labeled report against the human ranking over the
/// systems they share, dropping unshared systems with a warning. With a
/// window size, per-block rows are appended after each report's global
/// row.
pub fn metaeval_report(
    human: &HumanRanking,
    reports: &[(String, &RankingReport)],
    window: Option<usize>,
) -> Result<MetaEvalTable> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (label, report) in reports {
        let metric_scores = report.scores_by_name();
        let shared: Vec<(String, f64)> = human
            .sorted_by_rank()
            .into_iter()
            .filter(|(name, _)| metric_scores.contains_key(name.as_str()))
            .collect();
        for (name, _) in human.entries() {
            if !metric_scores.contains_key(name.as_str()) {
                warnings.push(format!(
                    "{label}: {name:?} is in the human ranking but not the report; dropped"
                ));
            }
        }
        let shared_names: std::collections::HashSet<&str> =
            shared.iter().map(|(n, _)| n.as_str()).collect();
        for system in &report.systems {
            if !shared_names.contains(system.name.as_str()) {
                warnings.push(format!(
                    "{label}: {:?} is in the report but not the human ranking; dropped",
                    system.name
                ));
            }
        }
        if shared.len() < 2 {
            return Err(Error::InsufficientOverlap {
                found: shared.len(),
            });
        }

        let human_scores: Vec<f64> = shared.iter().map(|(_, s)| *s).collect();
        let metric: Vec<f64> = shared
            .iter()
            .map(|(name, _)| metric_scores[name.as_str()])
            .collect();
        rows.push(MetaEvalRow {
            report: label.clone(),
            method: report.method.clone(),
            scope: "global".into(),
            pearson: pearson(&human_scores, &metric)?,
            spearman: spearman(&human_scores, &metric)?,
        });

        if let Some(window) = window {
            let window_report = windows_over(&shared, &metric_scores, window)?;
            for row in window_report.rows {
                rows.push(MetaEvalRow {
                    report: label.clone(),
                    method: report.method.clone(),
                    scope: format!("window@{}", row.start_rank),
                    pearson: row.pearson,
                    spearman: row.spearman,
                });
            }
        }
    }
    Ok(MetaEvalTable { rows, warnings })
}
