//! Command-line interface for ranking correction systems and comparing
//! rankings against human judgments.
//!
//! Subcommands mirror the pipeline stages: `score` turns a corpus into
//! per-system score files, `rank` turns scores into a ranking report,
//! `metaeval` and `window` correlate reports with a human ranking. Every
//! run is reproducible: one `--seed` drives all randomness, and options
//! can also be given in a TOML or JSON config file, with flags winning.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gecrank::metrics::MetricKind;
use gecrank::rating::RankBy;

#[derive(Debug, Parser)]
#[command(
    name = "gecrank",
    version,
    about = "Rank correction systems from sentence-level scores"
)]
struct Cli {
    /// Config file (TOML or JSON) supplying defaults for any option.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Root seed; every random component derives its own stream from it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every system sentence by sentence and write score files.
    Score(ScoreArgs),
    /// Rank systems by pairwise comparisons or plain aggregation.
    Rank(RankArgs),
    /// Correlate ranking reports with a human ranking.
    Metaeval(MetaevalArgs),
    /// Sliding-window correlations along a human ranking.
    Window(WindowArgs),
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Corpus manifest (JSON) naming source, system, and reference files.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,

    /// Metric to compute.
    #[arg(long, value_enum)]
    metric: Option<MetricArg>,

    /// Directory for score files, the score manifest, and the summary.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Corpus manifest; scores are computed with `--metric`.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,

    /// Score manifest (JSON) of precomputed score files.
    #[arg(long, value_name = "FILE")]
    scores: Option<PathBuf>,

    /// Metric to compute when scoring a corpus manifest.
    #[arg(long, value_enum)]
    metric: Option<MetricArg>,

    /// How scores are aggregated into a ranking.
    #[arg(long, value_enum)]
    aggregation: Option<AggregationArg>,

    /// Score differences up to this margin count as ties.
    #[arg(long, value_name = "EPS")]
    tie_epsilon: Option<f64>,

    /// TrueSkill draw probability.
    #[arg(long, value_name = "P")]
    draw_probability: Option<f64>,

    /// Statistic that orders the TrueSkill ranking.
    #[arg(long, value_enum)]
    rank_by: Option<RankByArg>,

    /// Shuffle the comparison stream (seeded) before rating.
    #[arg(long)]
    shuffle: bool,

    /// Also write the comparison stream as CSV.
    #[arg(long, value_name = "FILE")]
    dump_comparisons: Option<PathBuf>,

    /// Report file; without it the JSON goes to stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MetaevalArgs {
    /// Human ranking CSV with header `system,score`.
    #[arg(long, value_name = "FILE")]
    human: Option<PathBuf>,

    /// Ranking report JSON; repeat for side-by-side comparison.
    #[arg(long = "report", value_name = "FILE")]
    reports: Vec<PathBuf>,

    /// Also break correlations down into windows of this size.
    #[arg(long, value_name = "N")]
    window: Option<usize>,

    /// Table file; without it the CSV goes to stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WindowArgs {
    /// Human ranking CSV with header `system,score`.
    #[arg(long, value_name = "FILE")]
    human: Option<PathBuf>,

    /// Ranking report JSON to analyze.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,

    /// Window size.
    #[arg(long, value_name = "N")]
    window: Option<usize>,

    /// CSV file; without it the CSV goes to stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Write the plot-ready JSON block to this file.
    #[arg(long, value_name = "FILE")]
    plot_json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MetricArg {
    EditF,
    GleuPlus,
    Green,
    External,
}

impl From<MetricArg> for MetricKind {
    fn from(arg: MetricArg) -> Self {
        match arg {
            MetricArg::EditF => MetricKind::EditF,
            MetricArg::GleuPlus => MetricKind::GleuPlus,
            MetricArg::Green => MetricKind::Green,
            MetricArg::External => MetricKind::External,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
enum AggregationArg {
    Trueskill,
    ExpectedWins,
    Mean,
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum RankByArg {
    Mu,
    Conservative,
}

impl From<RankByArg> for RankBy {
    fn from(arg: RankByArg) -> Self {
        match arg {
            RankByArg::Mu => RankBy::Mu,
            RankByArg::Conservative => RankBy::Conservative,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
