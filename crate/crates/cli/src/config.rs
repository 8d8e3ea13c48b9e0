//! The optional config file and its merge rules.
//!
//! A config file holds the same options as the flags, flat and all
//! optional. Precedence is flag, then file, then built-in default;
//! knobs without a flag (the metric betas, the TrueSkill prior) are file
//! only.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use gecrank::metrics::{MetricConfig, MetricKind};
use gecrank::pairwise::{PairOrdering, TournamentConfig};
use gecrank::rating::{RankBy, TrueSkillConfig};
use gecrank::seed::sub_seed;

use crate::AggregationArg;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub manifest: Option<PathBuf>,
    pub scores: Option<PathBuf>,
    pub metric: Option<MetricKind>,
    pub aggregation: Option<AggregationArg>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub human: Option<PathBuf>,
    pub reports: Option<Vec<PathBuf>>,
    pub report: Option<PathBuf>,
    pub window: Option<usize>,
    pub plot_json: Option<PathBuf>,
    pub dump_comparisons: Option<PathBuf>,
    pub shuffle: Option<bool>,

    pub n_max: Option<usize>,
    pub gleu_iterations: Option<u32>,
    pub edit_beta: Option<f64>,
    pub green_beta: Option<f64>,
    pub smoothing_epsilon: Option<f64>,

    pub tie_epsilon: Option<f64>,

    pub mu0: Option<f64>,
    pub sigma0: Option<f64>,
    pub beta: Option<f64>,
    pub tau: Option<f64>,
    pub draw_probability: Option<f64>,
    pub rank_by: Option<RankBy>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("failed to read config file {}", path.display()))?;
        let parsed = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(anyhow::Error::from),
            Some("json") => serde_json::from_str(&text).map_err(anyhow::Error::from),
            _ => bail!(
                "config file must have a .toml or .json extension: {}",
                path.display()
            ),
        };
        parsed.with_context(|| format!("invalid config file {}", path.display()))
    }

    /// Metric settings for a run, with the GLEU sampling seed derived
    /// from the root seed.
    pub fn metric_config(&self, metric: MetricKind, seed: u64) -> MetricConfig {
        let defaults = MetricConfig::default();
        MetricConfig {
            metric,
            n_max: self.n_max.unwrap_or(defaults.n_max),
            gleu_iterations: self.gleu_iterations.unwrap_or(defaults.gleu_iterations),
            gleu_seed: sub_seed(seed, "gleu-sampling"),
            edit_beta: self.edit_beta.unwrap_or(defaults.edit_beta),
            green_beta: self.green_beta.unwrap_or(defaults.green_beta),
            smoothing_epsilon: self.smoothing_epsilon.unwrap_or(defaults.smoothing_epsilon),
        }
    }

    pub fn tournament_config(&self, tie_epsilon: Option<f64>) -> TournamentConfig {
        TournamentConfig {
            ordering: PairOrdering::OrderedPairs,
            tie_epsilon: tie_epsilon
                .or(self.tie_epsilon)
                .unwrap_or_else(|| TournamentConfig::default().tie_epsilon),
        }
    }

    pub fn trueskill_config(
        &self,
        draw_probability: Option<f64>,
        rank_by: Option<RankBy>,
    ) -> TrueSkillConfig {
        let defaults = TrueSkillConfig::default();
        let sigma0 = self.sigma0.unwrap_or(defaults.sigma0);
        TrueSkillConfig {
            mu0: self.mu0.unwrap_or(defaults.mu0),
            sigma0,
            beta: self.beta.unwrap_or(sigma0 / 2.0),
            tau: self.tau.unwrap_or(sigma0 / 100.0),
            draw_probability: draw_probability
                .or(self.draw_probability)
                .unwrap_or(defaults.draw_probability),
            rank_by: rank_by.or(self.rank_by).unwrap_or(defaults.rank_by),
        }
    }
}
