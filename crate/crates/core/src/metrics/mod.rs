//! Sentence-level correction metrics and corpus scoring.
//!
//! Three reference-based metrics are built in: an edit-overlap F score
//! ([`edit_f_sentence`]), a source-penalized n-gram precision
//! ([`gleu_plus_sentence`]), and an n-gram edit classification score
//! ([`green_sentence`]). All of them map a (source, hypothesis,
//! references) triple to `[0, 1]`, reward leaving a correct source alone,
//! and score a hypothesis identical to a reference at 1.0.
//!
//! [`score_matrix`] evaluates a whole corpus into a [`ScoreMatrix`] with
//! one row per sentence and one column per system. Rows are scored in
//! parallel; every cell is computed exactly as the corresponding
//! standalone sentence call, so the result is independent of thread
//! scheduling. [`edit_f_corpus`] instead accumulates edit counts over the
//! corpus and emits a single corpus-level F per system.

pub mod edit_f;
pub mod edits;
mod gleu;
mod green;
mod ngram;

pub use edit_f::{edit_f_sentence, f_beta};
pub use edits::{extract_edits, Edit, EditSet};
pub use gleu::gleu_plus_sentence;
pub use green::green_sentence;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{tokens, EvalCorpus, ScoreMatrix};
use crate::error::{Error, Result};

use edit_f::{edit_f_sentence_counts, EditCounts};

/// Which sentence metric to compute. `External` marks scores that are
/// loaded from files instead of computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    EditF,
    GleuPlus,
    Green,
    External,
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        let name = match self {
            MetricKind::EditF => "edit_f",
            MetricKind::GleuPlus => "gleu_plus",
            MetricKind::Green => "green",
            MetricKind::External => "external",
        };
        f.write_str(name)
    }
}

/// Metric selection plus every knob the metrics expose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MetricConfig {
    /// The metric to compute.
    pub metric: MetricKind,
    /// Highest n-gram order for the n-gram metrics.
    pub n_max: usize,
    /// Reference-sampling iterations for multi-reference GLEU.
    pub gleu_iterations: u32,
    /// Seed for the ChaCha8 reference-sampling generator.
    pub gleu_seed: u64,
    /// Beta for the edit F score (below one favors precision).
    pub edit_beta: f64,
    /// Beta for the GREEN per-order F scores (above one favors recall).
    pub green_beta: f64,
    /// Replacement for zero n-gram precisions and for zero per-order F
    /// scores inside geometric means.
    pub smoothing_epsilon: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            metric: MetricKind::EditF,
            n_max: 4,
            gleu_iterations: 500,
            gleu_seed: 42,
            edit_beta: 0.5,
            green_beta: 2.0,
            smoothing_epsilon: 1e-9,
        }
    }
}

impl MetricConfig {
    /// Checks every field against its documented domain.
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::InvalidConfig("n_max must be at least 1".into()));
        }
        if self.gleu_iterations < 1 {
            return Err(Error::InvalidConfig(
                "gleu_iterations must be at least 1".into(),
            ));
        }
        for (name, value) in [
            ("edit_beta", self.edit_beta),
            ("green_beta", self.green_beta),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite"
                )));
            }
        }
        if !self.smoothing_epsilon.is_finite()
            || self.smoothing_epsilon <= 0.0
            || self.smoothing_epsilon >= 1.0
        {
            return Err(Error::InvalidConfig(
                "smoothing_epsilon must lie strictly between 0 and 1".into(),
            ));
        }
        Ok(())
    }
}

/// Scores one (source, hypothesis, references) triple with the configured
/// metric.
pub fn sentence_score(
    source: &str,
    hypothesis: &str,
    references: &[String],
    config: &MetricConfig,
) -> Result<f64> {
    let src = tokens(source);
    let hyp = tokens(hypothesis);
    let refs: Vec<Vec<&str>> = references.iter().map(|r| tokens(r)).collect();
    match config.metric {
        MetricKind::EditF => edit_f_sentence(&src, &hyp, &refs, config.edit_beta),
        MetricKind::GleuPlus => gleu_plus_sentence(&src, &hyp, &refs, config),
        MetricKind::Green => green_sentence(&src, &hyp, &refs, config),
        MetricKind::External => Err(Error::InvalidConfig(
            "external scores are loaded from files, not computed".into(),
        )),
    }
}

/// Scores every sentence of every system.
pub fn score_matrix(corpus: &EvalCorpus, config: &MetricConfig) -> Result<ScoreMatrix> {
    config.validate()?;
    if config.metric == MetricKind::External {
        return Err(Error::InvalidConfig(
            "external scores are loaded from files, not computed".into(),
        ));
    }
    if !corpus.has_references() {
        return Err(Error::NoReferences);
    }
    let systems: Vec<(&str, &[String])> = corpus.systems().collect();
    let rows: Vec<Vec<f64>> = (0..corpus.sentence_count())
        .into_par_iter()
        .map(|i| {
            let src = tokens(corpus.source(i));
            let refs: Vec<Vec<&str>> = corpus.references(i).iter().map(|r| tokens(r)).collect();
            systems
                .iter()
                .map(|(_, outputs)| {
                    let hyp = tokens(&outputs[i]);
                    match config.metric {
                        MetricKind::EditF => edit_f_sentence(&src, &hyp, &refs, config.edit_beta),
                        MetricKind::GleuPlus => gleu_plus_sentence(&src, &hyp, &refs, config),
                        MetricKind::Green => green_sentence(&src, &hyp, &refs, config),
                        MetricKind::External => unreachable!("rejected above"),
                    }
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ScoreMatrix::new(corpus.system_names(), rows)
}

/// Corpus-level edit F per system: edit counts accumulate over sentences
/// (each sentence contributes the counts of its best reference) and a
/// single F_beta is computed from the totals.
pub fn edit_f_corpus(corpus: &EvalCorpus, config: &MetricConfig) -> Result<Vec<(String, f64)>> {
    config.validate()?;
    if !corpus.has_references() {
        return Err(Error::NoReferences);
    }
    corpus
        .systems()
        .map(|(name, outputs)| {
            let mut total = EditCounts::default();
            for (i, output) in outputs.iter().enumerate() {
                let src = tokens(corpus.source(i));
                let refs: Vec<Vec<&str>> = corpus.references(i).iter().map(|r| tokens(r)).collect();
                let hyp = tokens(output);
                total.add(edit_f_sentence_counts(&src, &hyp, &refs, config.edit_beta)?);
            }
            Ok((name.to_string(), total.f_beta(config.edit_beta)))
        })
        .collect()
}
