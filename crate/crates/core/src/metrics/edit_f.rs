//! Edit-overlap F score.
//!
//! Hypothesis and reference are each reduced to their edit sets against the
//! shared source; a hypothesis edit counts as a true positive only when an
//! identical edit (same span, same replacement) appears in the reference
//! set. The score is F_beta over edit precision and recall, with beta
//! below 1 weighting precision higher. Multi-reference sentences take the
//! best reference.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::edits::{extract_edits, EditSet};

/// F_beta over edit counts, with the degenerate cases pinned down: two
/// empty edit sets score 1.0, one empty set scores 0.0, and zero true
/// positives score 0.0.
pub fn f_beta(tp: usize, hyp_edits: usize, ref_edits: usize, beta: f64) -> f64 {
    debug_assert!(tp <= hyp_edits && tp <= ref_edits);
    match (hyp_edits, ref_edits) {
        (0, 0) => 1.0,
        (0, _) | (_, 0) => 0.0,
        _ if tp == 0 => 0.0,
        _ => {
            let p = tp as f64 / hyp_edits as f64;
            let r = tp as f64 / ref_edits as f64;
            let b2 = beta * beta;
            (1.0 + b2) * p * r / (b2 * p + r)
        }
    }
}

fn true_positives(hyp: &EditSet, reference: &EditSet) -> usize {
    let ref_edits: HashSet<_> = reference.iter().collect();
    hyp.iter().filter(|e| ref_edits.contains(e)).count()
}

/// Sentence-level edit F_beta: the best score over all references.
pub fn edit_f_sentence(
    source: &[&str],
    hypothesis: &[&str],
    references: &[Vec<&str>],
    beta: f64,
) -> Result<f64> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    let hyp_edits = extract_edits(source, hypothesis);
    let mut best = f64::NEG_INFINITY;
    for reference in references {
        let ref_edits = extract_edits(source, reference);
        let tp = true_positives(&hyp_edits, &ref_edits);
        best = best.max(f_beta(tp, hyp_edits.len(), ref_edits.len(), beta));
    }
    Ok(best)
}

/// Count accumulator for corpus-level scoring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EditCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl EditCounts {
    pub fn add(&mut self, other: EditCounts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }

    pub fn f_beta(&self, beta: f64) -> f64 {
        f_beta(self.tp, self.tp + self.fp, self.tp + self.fn_, beta)
    }
}

/// Scores one sentence and returns the counts of the reference that
/// maximizes sentence-level F_beta (the earliest reference on ties).
pub fn edit_f_sentence_counts(
    source: &[&str],
    hypothesis: &[&str],
    references: &[Vec<&str>],
    beta: f64,
) -> Result<EditCounts> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    let hyp_edits = extract_edits(source, hypothesis);
    let mut best: Option<(f64, EditCounts)> = None;
    for reference in references {
        let ref_edits = extract_edits(source, reference);
        let tp = true_positives(&hyp_edits, &ref_edits);
        let f = f_beta(tp, hyp_edits.len(), ref_edits.len(), beta);
        let counts = EditCounts {
            tp,
            fp: hyp_edits.len() - tp,
            fn_: ref_edits.len() - tp,
        };
        if best.is_none_or(|(best_f, _)| f > best_f) {
            best = Some((f, counts));
        }
    }
    Ok(best.expect("at least one reference").1)
}
