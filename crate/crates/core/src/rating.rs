//! Aggregating comparison streams into system rankings.
//!
//! The main aggregator is a two-player TrueSkill rater with draws: each
//! system holds a Gaussian skill belief `N(mu, sigma^2)` and every
//! comparison updates the two beliefs involved. Updates run in one pass
//! over the stream in its emission order. Alternatives are Expected Wins
//! (mean win fraction against each opponent with at least one decisive
//! result) and the plain per-system mean score.
//!
//! All aggregators produce a [`RankingReport`]: systems ordered by their
//! primary score with competition ranking (tied systems share the lowest
//! rank and the next rank skips, as in "1, 2, 2, 4").

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::ScoreMatrix;
use crate::error::{Error, Result};
use crate::pairwise::{Comparison, Outcome};

/// A Gaussian skill belief.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rating {
    pub mu: f64,
    pub sigma: f64,
}

impl Rating {
    /// The conservative estimate `mu - 3 * sigma`.
    pub fn conservative(&self) -> f64 {
        self.mu - 3.0 * self.sigma
    }
}

/// Which statistic orders the final ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankBy {
    /// The posterior mean.
    #[default]
    Mu,
    /// The conservative estimate `mu - 3 * sigma`.
    Conservative,
}

/// TrueSkill hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrueSkillConfig {
    /// Prior mean.
    pub mu0: f64,
    /// Prior standard deviation.
    pub sigma0: f64,
    /// Performance noise per comparison.
    pub beta: f64,
    /// Additive dynamics noise applied to each player before every update.
    pub tau: f64,
    /// Probability mass reserved for draws, in `[0, 1)`.
    pub draw_probability: f64,
    /// Ranking key; the conservative estimate is always reported either way.
    pub rank_by: RankBy,
}

impl Default for TrueSkillConfig {
    fn default() -> Self {
        let sigma0 = 25.0 / 3.0;
        Self {
            mu0: 25.0,
            sigma0,
            beta: sigma0 / 2.0,
            tau: sigma0 / 100.0,
            draw_probability: 0.1,
            rank_by: RankBy::Mu,
        }
    }
}

impl TrueSkillConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.mu0.is_finite() {
            return Err(Error::InvalidConfig("mu0 must be finite".into()));
        }
        for (name, value) in [("sigma0", self.sigma0), ("beta", self.beta)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite"
                )));
            }
        }
        if !self.tau.is_finite() || self.tau < 0.0 {
            return Err(Error::InvalidConfig(
                "tau must be non-negative and finite".into(),
            ));
        }
        if !self.draw_probability.is_finite() || !(0.0..1.0).contains(&self.draw_probability) {
            return Err(Error::InvalidConfig(
                "draw_probability must lie in [0, 1)".into(),
            ));
        }
        Ok(())
    }
}

/// One row of a ranking: `mu`, `sigma`, and `conservative` are present
/// only for rating-based aggregation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedSystem {
    pub name: String,
    pub rank: usize,
    pub score: f64,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub conservative: Option<f64>,
}

/// A finished ranking, ready for serialization or display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub method: String,
    pub systems: Vec<RankedSystem>,
    /// Number of updates that hit the numerical underflow guard; omitted
    /// when zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guarded_updates: Option<usize>,
}

impl RankingReport {
    /// Orders entries by score (descending, ties broken by name) and
    /// assigns competition ranks; exactly equal scores share a rank.
    fn assemble(method: &str, mut entries: Vec<RankedSystem>) -> Self {
        entries.sort_by(|a, b| {
            b.score
                .total_cmp(&a.score)
                .then_with(|| a.name.cmp(&b.name))
        });
        let mut rank = 1;
        for i in 0..entries.len() {
            if i > 0 && entries[i].score != entries[i - 1].score {
                rank = i + 1;
            }
            entries[i].rank = rank;
        }
        Self {
            method: method.to_string(),
            systems: entries,
            guarded_updates: None,
        }
    }

    /// Builds a report from bare `(name, score)` pairs.
    pub fn from_scores(method: &str, scores: Vec<(String, f64)>) -> Self {
        let entries = scores
            .into_iter()
            .map(|(name, score)| RankedSystem {
                name,
                rank: 0,
                score,
                mu: None,
                sigma: None,
                conservative: None,
            })
            .collect();
        Self::assemble(method, entries)
    }

    /// The per-system primary scores, keyed by name.
    pub fn scores_by_name(&self) -> HashMap<&str, f64> {
        self.systems
            .iter()
            .map(|s| (s.name.as_str(), s.score))
            .collect()
    }

    /// A fixed-width plain-text table.
    pub fn to_text_table(&self) -> String {
        let name_width = self
            .systems
            .iter()
            .map(|s| s.name.len())
            .max()
            .unwrap_or(0)
            .max("system".len());
        let mut out = format!(
            "{:>4}  {:<name_width$}  {:>12}  {:>10}  {:>10}  {:>12}\n",
            "rank", "system", "score", "mu", "sigma", "conservative"
        );
        for s in &self.systems {
            let opt = |v: Option<f64>| match v {
                Some(v) => format!("{v:.4}"),
                None => "-".to_string(),
            };
            out.push_str(&format!(
                "{:>4}  {:<name_width$}  {:>12.6}  {:>10}  {:>10}  {:>12}\n",
                s.rank,
                s.name,
                s.score,
                opt(s.mu),
                opt(s.sigma),
                opt(s.conservative),
            ));
        }
        out
    }
}

fn system_index(systems: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(systems.len());
    for (k, name) in systems.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::EmptySystemName);
        }
        if index.insert(name.as_str(), k).is_some() {
            return Err(Error::DuplicateSystemName(name.clone()));
        }
    }
    Ok(index)
}

mod gauss {
    use statrs::function::erf;
    use std::f64::consts::{PI, SQRT_2};

    pub fn pdf(x: f64) -> f64 {
        (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
    }

    // libm's erfc stays within a couple of ulps everywhere; statrs loses
    // ten digits on mid-range arguments, which is enough to push rating
    // updates visibly off their closed-form values.
    pub fn cdf(x: f64) -> f64 {
        0.5 * libm::erfc(-x / SQRT_2)
    }

    pub fn inverse_cdf(q: f64) -> f64 {
        SQRT_2 * erf::erf_inv(2.0 * q - 1.0)
    }
}

/// The draw margin: the performance-difference band that counts as a tie.
fn draw_margin(config: &TrueSkillConfig) -> f64 {
    gauss::inverse_cdf((1.0 + config.draw_probability) / 2.0)
        * std::f64::consts::SQRT_2
        * config.beta
}

const UNDERFLOW_GUARD: f64 = 1e-300;

struct UpdateResult {
    a: Rating,
    b: Rating,
    guarded: bool,
}

/// One two-player update. Variances are inflated by `tau^2` first; the
/// total uncertainty `c` then couples both players with the performance
/// noise. Denominators below the underflow guard switch `v` to its
/// asymptote and `w` to one.
fn update(
    a: Rating,
    b: Rating,
    outcome: Outcome,
    config: &TrueSkillConfig,
    eps: f64,
) -> UpdateResult {
    let tau2 = config.tau * config.tau;
    let va = a.sigma * a.sigma + tau2;
    let vb = b.sigma * b.sigma + tau2;
    let c2 = 2.0 * config.beta * config.beta + va + vb;
    let c = c2.sqrt();
    let e = eps / c;

    // `v` is the mean shift in units of c, oriented toward system a;
    // `w` drives the variance contraction of both players.
    let (v, w, guarded) = match outcome {
        Outcome::Tie => {
            let t = (a.mu - b.mu) / c;
            let denom = gauss::cdf(e - t) - gauss::cdf(-e - t);
            if denom < UNDERFLOW_GUARD {
                (if t < 0.0 { -t - e } else { -t + e }, 1.0, true)
            } else {
                let v = (gauss::pdf(-e - t) - gauss::pdf(e - t)) / denom;
                let w = v * v + ((e - t) * gauss::pdf(e - t) + (e + t) * gauss::pdf(e + t)) / denom;
                (v, w, false)
            }
        }
        Outcome::AWins | Outcome::BWins => {
            let sign = if outcome == Outcome::AWins { 1.0 } else { -1.0 };
            let t = sign * (a.mu - b.mu) / c;
            let d = t - e;
            let denom = gauss::cdf(d);
            if denom < UNDERFLOW_GUARD {
                (sign * -d, 1.0, true)
            } else {
                let v = gauss::pdf(d) / denom;
                (sign * v, v * (v + d), false)
            }
        }
    };

    let shrink = |variance: f64| (variance * (1.0 - variance / c2 * w)).sqrt();
    UpdateResult {
        a: Rating {
            mu: a.mu + va / c * v,
            sigma: shrink(va),
        },
        b: Rating {
            mu: b.mu - vb / c * v,
            sigma: shrink(vb),
        },
        guarded,
    }
}

/// Applies one two-player update and returns the posterior ratings.
///
/// This is the step [`trueskill_rank`] folds over a comparison stream,
/// exposed for callers that manage their own streams or want to inspect
/// individual updates.
pub fn trueskill_update(
    a: Rating,
    b: Rating,
    outcome: Outcome,
    config: &TrueSkillConfig,
) -> Result<(Rating, Rating)> {
    config.validate()?;
    for rating in [a, b] {
        if !rating.mu.is_finite() || !rating.sigma.is_finite() || rating.sigma <= 0.0 {
            return Err(Error::InvalidConfig(
                "ratings must have finite mu and positive sigma".into(),
            ));
        }
    }
    let result = update(a, b, outcome, config, draw_margin(config));
    for rating in [result.a, result.b] {
        if !rating.mu.is_finite() || !rating.sigma.is_finite() || rating.sigma <= 0.0 {
            return Err(Error::NumericalInstability { update: 0 });
        }
    }
    Ok((result.a, result.b))
}

/// Rates `systems` over the comparison stream with two-player TrueSkill
/// and ranks them.
pub fn trueskill_rank(
    comparisons: &[Comparison],
    systems: &[String],
    config: &TrueSkillConfig,
) -> Result<RankingReport> {
    config.validate()?;
    let index = system_index(systems)?;
    let mut ratings = vec![
        Rating {
            mu: config.mu0,
            sigma: config.sigma0,
        };
        systems.len()
    ];
    let eps = draw_margin(config);
    let mut guarded_updates = 0usize;

    for (u, comparison) in comparisons.iter().enumerate() {
        let a = *index
            .get(comparison.system_a.as_str())
            .ok_or_else(|| Error::UnknownSystem(comparison.system_a.clone()))?;
        let b = *index
            .get(comparison.system_b.as_str())
            .ok_or_else(|| Error::UnknownSystem(comparison.system_b.clone()))?;
        if a == b {
            return Err(Error::InvalidConfig(format!(
                "comparison {u} pits {:?} against itself",
                comparison.system_a
            )));
        }
        let result = update(ratings[a], ratings[b], comparison.outcome, config, eps);
        for rating in [&result.a, &result.b] {
            if !rating.mu.is_finite() || !rating.sigma.is_finite() || rating.sigma <= 0.0 {
                return Err(Error::NumericalInstability { update: u });
            }
        }
        if result.guarded {
            guarded_updates += 1;
        }
        ratings[a] = result.a;
        ratings[b] = result.b;
    }

    let entries = systems
        .iter()
        .zip(&ratings)
        .map(|(name, rating)| RankedSystem {
            name: name.clone(),
            rank: 0,
            score: match config.rank_by {
                RankBy::Mu => rating.mu,
                RankBy::Conservative => rating.conservative(),
            },
            mu: Some(rating.mu),
            sigma: Some(rating.sigma),
            conservative: Some(rating.conservative()),
        })
        .collect();
    let mut report = RankingReport::assemble("trueskill", entries);
    if guarded_updates > 0 {
        report.guarded_updates = Some(guarded_updates);
    }
    Ok(report)
}

/// Ranks systems by Expected Wins: the mean, over opponents with at least
/// one decisive result, of the fraction of decisive comparisons won. Ties
/// carry no weight here; a system with no decisive comparison at all
/// scores zero, so an all-tied stream ranks everyone equal at zero.
pub fn expected_wins_rank(comparisons: &[Comparison], systems: &[String]) -> Result<RankingReport> {
    let index = system_index(systems)?;
    let n = systems.len();
    let mut wins = vec![vec![0u64; n]; n];
    for comparison in comparisons {
        let a = *index
            .get(comparison.system_a.as_str())
            .ok_or_else(|| Error::UnknownSystem(comparison.system_a.clone()))?;
        let b = *index
            .get(comparison.system_b.as_str())
            .ok_or_else(|| Error::UnknownSystem(comparison.system_b.clone()))?;
        match comparison.outcome {
            Outcome::AWins => wins[a][b] += 1,
            Outcome::BWins => wins[b][a] += 1,
            Outcome::Tie => {}
        }
    }

    let scores = systems
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut sum = 0.0;
            let mut opponents = 0usize;
            for (j, opp_row) in wins.iter().enumerate() {
                if i == j {
                    continue;
                }
                let won = wins[i][j];
                let decisive = won + opp_row[i];
                if decisive > 0 {
                    sum += won as f64 / decisive as f64;
                    opponents += 1;
                }
            }
            let ew = if opponents == 0 {
                0.0
            } else {
                sum / opponents as f64
            };
            (name.clone(), ew)
        })
        .collect();
    Ok(RankingReport::from_scores("expected_wins", scores))
}

/// Ranks systems by their mean sentence score.
pub fn mean_rank(matrix: &ScoreMatrix) -> RankingReport {
    let scores = matrix
        .system_names()
        .iter()
        .cloned()
        .zip(matrix.means())
        .collect();
    RankingReport::from_scores("mean", scores)
}
