//! GLEU with a source-mistake penalty.
//!
//! For each n-gram order the numerator is the clipped hypothesis/reference
//! match count minus the count of hypothesis n-grams that merely copy a
//! source mistake (n-gram types present in the source but absent from the
//! reference), floored at zero. The sentence score is a brevity-penalized
//! geometric mean of the per-order precisions. With several references,
//! each iteration samples one uniformly with a seeded generator and the
//! final score is the mean across iterations; a single reference needs
//! only one pass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::ngram::ngram_counts;
use super::MetricConfig;

/// Sentence-level GLEU score in `[0, 1]`.
pub fn gleu_plus_sentence(
    source: &[&str],
    hypothesis: &[&str],
    references: &[Vec<&str>],
    config: &MetricConfig,
) -> Result<f64> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    if references.len() == 1 {
        return Ok(score_against(source, hypothesis, &references[0], config));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.gleu_seed);
    let mut total = 0.0;
    for _ in 0..config.gleu_iterations {
        let reference = &references[rng.gen_range(0..references.len())];
        total += score_against(source, hypothesis, reference, config);
    }
    Ok(total / f64::from(config.gleu_iterations))
}

fn score_against(
    source: &[&str],
    hypothesis: &[&str],
    reference: &[&str],
    config: &MetricConfig,
) -> f64 {
    if hypothesis.is_empty() {
        return if reference.is_empty() { 1.0 } else { 0.0 };
    }

    let mut log_sum = 0.0;
    for n in 1..=config.n_max {
        let windows = if hypothesis.len() >= n {
            hypothesis.len() - n + 1
        } else {
            0
        };
        // An order longer than the hypothesis has nothing to get wrong;
        // it contributes a factor of one rather than a smoothed zero.
        let precision = if windows == 0 {
            1.0
        } else {
            let hyp = ngram_counts(hypothesis, n);
            let rf = ngram_counts(reference, n);
            let src = ngram_counts(source, n);
            let matches: i64 = hyp
                .iter()
                .map(|(g, &h)| i64::from(h.min(rf.get(g).copied().unwrap_or(0))))
                .sum();
            let penalty: i64 = hyp
                .iter()
                .filter(|(g, _)| !rf.contains_key(*g))
                .map(|(g, &h)| i64::from(h.min(src.get(g).copied().unwrap_or(0))))
                .sum();
            let numerator = (matches - penalty).max(0) as f64;
            let p = numerator / windows as f64;
            if p == 0.0 {
                config.smoothing_epsilon
            } else {
                p
            }
        };
        log_sum += precision.ln();
    }

    let brevity = (1.0 - reference.len() as f64 / hypothesis.len() as f64)
        .exp()
        .min(1.0);
    brevity * (log_sum / config.n_max as f64).exp()
}
