//! GREEN: n-gram edit counts classified as needed, made, and correct.
//!
//! For each n-gram order, every gram's source, hypothesis, and reference
//! counts decide how many deletions and insertions the reference demanded
//! and how many the hypothesis performed; the overlap of the two is a true
//! positive. Per-order F scores (recall-weighted, beta above 1) combine
//! through a smoothed geometric mean, and the best reference wins.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::ngram::ngram_counts;
use super::MetricConfig;

/// Sentence-level GREEN score in `[0, 1]`: the best score over all
/// references.
pub fn green_sentence(
    source: &[&str],
    hypothesis: &[&str],
    references: &[Vec<&str>],
    config: &MetricConfig,
) -> Result<f64> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    Ok(references
        .iter()
        .map(|reference| score_against(source, hypothesis, reference, config))
        .fold(f64::NEG_INFINITY, f64::max))
}

fn score_against(
    source: &[&str],
    hypothesis: &[&str],
    reference: &[&str],
    config: &MetricConfig,
) -> f64 {
    let mut log_sum = 0.0;
    for n in 1..=config.n_max {
        let src = ngram_counts(source, n);
        let hyp = ngram_counts(hypothesis, n);
        let rf = ngram_counts(reference, n);

        let grams: HashSet<&[&str]> = src
            .keys()
            .chain(hyp.keys())
            .chain(rf.keys())
            .copied()
            .collect();

        let mut tp: i64 = 0;
        let mut made: i64 = 0;
        let mut needed: i64 = 0;
        for gram in grams {
            let s = i64::from(src.get(gram).copied().unwrap_or(0));
            let h = i64::from(hyp.get(gram).copied().unwrap_or(0));
            let r = i64::from(rf.get(gram).copied().unwrap_or(0));

            let del_needed = s - s.min(r);
            let del_made = s - s.min(h);
            let ins_needed = r - s.min(r);
            let ins_made = h - s.min(h);

            tp += del_needed.min(del_made) + ins_needed.min(ins_made);
            made += del_made + ins_made;
            needed += del_needed + ins_needed;
        }

        let fp = made - tp;
        let fn_ = needed - tp;
        let f = if tp == 0 {
            if fp == 0 && fn_ == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            let p = tp as f64 / made as f64;
            let r = tp as f64 / needed as f64;
            let b2 = config.green_beta * config.green_beta;
            (1.0 + b2) * p * r / (b2 * p + r)
        };
        log_sum += f.max(config.smoothing_epsilon).ln();
    }
    (log_sum / config.n_max as f64).exp()
}
