//! Rank grammatical error correction systems the way human evaluations
//! do: sentence by sentence, head to head.
//!
//! Corpus-level metric averages hide how often a system actually beats
//! another on individual sentences, and a handful of badly scored
//! sentences can drag a strong system down the table. This crate instead
//! scores every system on every sentence, turns the scores into pairwise
//! outcomes, and aggregates the outcomes with TrueSkill, the same
//! procedure used to rank systems from human pairwise judgments.
//!
//! The pipeline has four stages, each usable on its own:
//!
//! 1. [`corpus`] loads aligned sources, hypotheses, and references, or
//!    precomputed score files for metrics run elsewhere.
//! 2. [`metrics`] scores hypotheses sentence by sentence with an
//!    edit-based F-score, GLEU with multi-reference sampling, or GREEN's
//!    n-gram edit F-score.
//! 3. [`pairwise`] expands a score matrix into per-sentence win, loss,
//!    and tie outcomes, and [`rating`] aggregates those with TrueSkill or
//!    expected wins (plain mean aggregation is there for comparison).
//! 4. [`metaeval`] correlates any ranking against a human ranking,
//!    globally or within sliding windows of adjacent systems.
//!
//! ```
//! use gecrank::corpus::ScoreMatrix;
//! use gecrank::pairwise::{to_comparisons, TournamentConfig};
//! use gecrank::rating::{trueskill_rank, TrueSkillConfig};
//!
//! let matrix = ScoreMatrix::new(
//!     vec!["lstm".into(), "xfmr".into()],
//!     vec![vec![0.40, 0.55], vec![0.90, 0.70], vec![0.30, 0.80]],
//! )?;
//! let comparisons = to_comparisons(&matrix, &TournamentConfig::default())?;
//! let report = trueskill_rank(
//!     &comparisons,
//!     &matrix.system_names().to_vec(),
//!     &TrueSkillConfig::default(),
//! )?;
//! assert_eq!(report.systems[0].name, "xfmr");
//! # Ok::<(), gecrank::error::Error>(())
//! ```

pub mod corpus;
pub mod error;
pub mod metaeval;
pub mod metrics;
pub mod pairwise;
pub mod rating;
pub mod seed;

pub use corpus::{load_corpus, load_scores, EvalCorpus, ScoreMatrix};
pub use error::{Error, Result};
pub use metaeval::{metaeval_report, pearson, spearman, window_analysis, HumanRanking};
pub use metrics::{score_matrix, MetricConfig, MetricKind};
pub use pairwise::{to_comparisons, Comparison, Outcome, TournamentConfig};
pub use rating::{
    expected_wins_rank, mean_rank, trueskill_rank, trueskill_update, RankingReport, Rating,
    TrueSkillConfig,
};
