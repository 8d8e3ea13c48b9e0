//! Turning a score matrix into per-sentence pairwise comparisons.
//!
//! Every sentence becomes a tiny tournament among the systems: system `a`
//! beats system `b` on a sentence when its score is higher by more than
//! `tie_epsilon`, and scores within `tie_epsilon` of each other tie. The
//! default emission is ordered pairs, so each unordered pair appears twice
//! per sentence (once per direction) and a sentence with `N` systems
//! yields `N * (N - 1)` comparisons; unordered emission yields each pair
//! once. Comparisons are emitted sentence by sentence, and within a
//! sentence in index order, so downstream sequential raters see a
//! reproducible stream.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::ScoreMatrix;
use crate::error::{Error, Result};

/// The result of comparing system `a` against system `b` on one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AWins,
    BWins,
    Tie,
}

/// One sentence-level comparison between two named systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub sentence: usize,
    pub system_a: String,
    pub system_b: String,
    pub outcome: Outcome,
}

/// Whether each unordered pair is emitted in both directions or once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrdering {
    #[default]
    OrderedPairs,
    UnorderedPairs,
}

/// Tournament shape and tie sensitivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TournamentConfig {
    pub ordering: PairOrdering,
    /// Scores within this distance of each other tie. Zero means only
    /// exactly equal scores tie.
    pub tie_epsilon: f64,
}

impl Default for TournamentConfig {
    fn default() -> Self {
        Self {
            ordering: PairOrdering::OrderedPairs,
            tie_epsilon: 0.0,
        }
    }
}

impl TournamentConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.tie_epsilon.is_finite() || self.tie_epsilon < 0.0 {
            return Err(Error::InvalidConfig(
                "tie_epsilon must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

fn outcome(score_a: f64, score_b: f64, tie_epsilon: f64) -> Outcome {
    let diff = score_a - score_b;
    if diff.abs() <= tie_epsilon {
        Outcome::Tie
    } else if diff > 0.0 {
        Outcome::AWins
    } else {
        Outcome::BWins
    }
}

/// Expands a score matrix into its comparison stream.
pub fn to_comparisons(matrix: &ScoreMatrix, config: &TournamentConfig) -> Result<Vec<Comparison>> {
    config.validate()?;
    let names = matrix.system_names();
    let n = names.len();
    let per_sentence = match config.ordering {
        PairOrdering::OrderedPairs => n * n.saturating_sub(1),
        PairOrdering::UnorderedPairs => n * n.saturating_sub(1) / 2,
    };
    let mut comparisons = Vec::with_capacity(matrix.sentence_count() * per_sentence);
    for i in 0..matrix.sentence_count() {
        let row = matrix.row(i);
        match config.ordering {
            PairOrdering::OrderedPairs => {
                for a in 0..n {
                    for b in 0..n {
                        if a == b {
                            continue;
                        }
                        comparisons.push(Comparison {
                            sentence: i,
                            system_a: names[a].clone(),
                            system_b: names[b].clone(),
                            outcome: outcome(row[a], row[b], config.tie_epsilon),
                        });
                    }
                }
            }
            PairOrdering::UnorderedPairs => {
                for a in 0..n {
                    for b in (a + 1)..n {
                        comparisons.push(Comparison {
                            sentence: i,
                            system_a: names[a].clone(),
                            system_b: names[b].clone(),
                            outcome: outcome(row[a], row[b], config.tie_epsilon),
                        });
                    }
                }
            }
        }
    }
    Ok(comparisons)
}

/// Writes comparisons as CSV with the header
/// `sentence_id,system_a,system_b,outcome`.
pub fn write_comparisons_csv<W: Write>(comparisons: &[Comparison], writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["sentence_id", "system_a", "system_b", "outcome"])
        .map_err(|e| Error::malformed("<comparisons>", e))?;
    for c in comparisons {
        let outcome = match c.outcome {
            Outcome::AWins => "a_wins",
            Outcome::BWins => "b_wins",
            Outcome::Tie => "tie",
        };
        csv.write_record([
            c.sentence.to_string().as_str(),
            c.system_a.as_str(),
            c.system_b.as_str(),
            outcome,
        ])
        .map_err(|e| Error::malformed("<comparisons>", e))?;
    }
    csv.flush().map_err(|e| Error::io("<comparisons>", e))
}
