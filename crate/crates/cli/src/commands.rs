//! Subcommand implementations.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gecrank::corpus::{load_corpus, load_scores, write_score_file, ScoreMatrix};
use gecrank::metaeval::{metaeval_report, window_analysis, HumanRanking};
use gecrank::metrics::{edit_f_corpus, score_matrix, MetricKind};
use gecrank::pairwise::{to_comparisons, write_comparisons_csv};
use gecrank::rating::{expected_wins_rank, mean_rank, trueskill_rank, RankingReport};
use gecrank::seed::sub_seed;

use crate::config::FileConfig;
use crate::{AggregationArg, Cli, Command, MetaevalArgs, RankArgs, ScoreArgs, WindowArgs};

pub fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let seed = cli.seed.or(file.seed).unwrap_or(42);
    match cli.command {
        Command::Score(args) => cmd_score(args, &file, seed),
        Command::Rank(args) => cmd_rank(args, &file, seed),
        Command::Metaeval(args) => cmd_metaeval(args, &file),
        Command::Window(args) => cmd_window(args, &file),
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| anyhow::anyhow!("{what} is required (as a flag or a config file key)"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("failed to write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_report(path: &Path) -> Result<RankingReport> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("failed to read report {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("invalid ranking report {}", path.display()))
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(str::to_owned)
        .unwrap_or_else(|| path.display().to_string())
}

fn file_stem_for(name: &str, used: &mut HashSet<String>) -> String {
    let mut stem: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    while !used.insert(stem.clone()) {
        stem.push('_');
    }
    stem
}

#[derive(Serialize)]
struct ScoreSummary {
    metric: String,
    seed: u64,
    sentence_count: usize,
    systems: Vec<SystemSummary>,
}

#[derive(Serialize)]
struct SystemSummary {
    name: String,
    file: String,
    mean: f64,
}

fn cmd_score(args: ScoreArgs, file: &FileConfig, seed: u64) -> Result<()> {
    let manifest = require(
        args.manifest.or_else(|| file.manifest.clone()),
        "--manifest",
    )?;
    let metric: MetricKind = args
        .metric
        .map(Into::into)
        .or(file.metric)
        .unwrap_or(MetricKind::EditF);
    if metric == MetricKind::External {
        bail!("--metric external names scores loaded from files; there is nothing to compute (see rank --scores)");
    }
    let out_dir = require(args.out.or_else(|| file.out.clone()), "--out")?;

    let corpus = load_corpus(&manifest)?;
    let matrix = score_matrix(&corpus, &file.metric_config(metric, seed))?;

    fs::create_dir_all(&out_dir)
        .with_context(|| format!("failed to create {}", out_dir.display()))?;
    let mut used = HashSet::new();
    let mut files = Vec::new();
    for (k, name) in matrix.system_names().iter().enumerate() {
        let file_name = format!("{}.scores", file_stem_for(name, &mut used));
        write_score_file(out_dir.join(&file_name), &matrix.column(k))?;
        files.push((name.clone(), file_name));
    }

    let mut score_manifest = String::from("{\n");
    for (i, (name, file_name)) in files.iter().enumerate() {
        score_manifest.push_str(&format!(
            "  {}: {}{}\n",
            serde_json::to_string(name)?,
            serde_json::to_string(file_name)?,
            if i + 1 < files.len() { "," } else { "" }
        ));
    }
    score_manifest.push_str("}\n");
    fs::write(out_dir.join("scores.json"), score_manifest)
        .with_context(|| format!("failed to write {}", out_dir.join("scores.json").display()))?;

    let summary = ScoreSummary {
        metric: metric.to_string(),
        seed,
        sentence_count: matrix.sentence_count(),
        systems: files
            .iter()
            .zip(matrix.means())
            .map(|((name, file_name), mean)| SystemSummary {
                name: name.clone(),
                file: file_name.clone(),
                mean,
            })
            .collect(),
    };
    fs::write(
        out_dir.join("summary.json"),
        serde_json::to_string_pretty(&summary)? + "\n",
    )
    .with_context(|| format!("failed to write {}", out_dir.join("summary.json").display()))?;

    println!(
        "scored {} systems on {} sentences with {metric}; score manifest: {}",
        matrix.system_count(),
        matrix.sentence_count(),
        out_dir.join("scores.json").display()
    );
    Ok(())
}

fn load_matrix(
    manifest: Option<PathBuf>,
    scores: Option<PathBuf>,
    metric: Option<MetricKind>,
    file: &FileConfig,
    seed: u64,
) -> Result<ScoreMatrix> {
    match (manifest, scores) {
        (Some(_), Some(_)) => bail!("give --manifest or --scores, not both"),
        (None, None) => bail!("rank needs --manifest (compute scores) or --scores (load them)"),
        (Some(path), None) => {
            let metric = metric.unwrap_or(MetricKind::EditF);
            Ok(score_matrix(
                &load_corpus(&path)?,
                &file.metric_config(metric, seed),
            )?)
        }
        (None, Some(path)) => {
            if let Some(requested) = metric {
                if requested != MetricKind::External {
                    bail!(
                        "--scores loads precomputed values; --metric {requested} would be ignored"
                    );
                }
            }
            Ok(load_scores(&path, None)?)
        }
    }
}

fn cmd_rank(args: RankArgs, file: &FileConfig, seed: u64) -> Result<()> {
    let aggregation = args
        .aggregation
        .or(file.aggregation)
        .unwrap_or(AggregationArg::Trueskill);
    let metric: Option<MetricKind> = args.metric.map(Into::into).or(file.metric);
    let manifest = args.manifest.or_else(|| file.manifest.clone());
    let scores = args.scores.or_else(|| file.scores.clone());
    let out = args.out.or_else(|| file.out.clone());
    let dump = args
        .dump_comparisons
        .or_else(|| file.dump_comparisons.clone());
    let shuffle = args.shuffle || file.shuffle.unwrap_or(false);

    let report = if aggregation == AggregationArg::Corpus {
        let metric = metric.unwrap_or(MetricKind::EditF);
        if metric != MetricKind::EditF {
            bail!("corpus accumulation is defined only for edit_f, not {metric}");
        }
        if scores.is_some() {
            bail!("corpus accumulation re-extracts edits; give --manifest instead of --scores");
        }
        if dump.is_some() {
            bail!("corpus accumulation makes no pairwise comparisons to dump");
        }
        let manifest = require(manifest, "--manifest")?;
        let totals = edit_f_corpus(&load_corpus(&manifest)?, &file.metric_config(metric, seed))?;
        RankingReport::from_scores("corpus_edit_f", totals)
    } else {
        let matrix = load_matrix(manifest, scores, metric, file, seed)?;
        let need_comparisons = aggregation != AggregationArg::Mean || dump.is_some();
        let comparisons = if need_comparisons {
            let mut comparisons =
                to_comparisons(&matrix, &file.tournament_config(args.tie_epsilon))?;
            if shuffle {
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "comparison-shuffle"));
                comparisons.shuffle(&mut rng);
            }
            comparisons
        } else {
            Vec::new()
        };
        if let Some(path) = &dump {
            let out = fs::File::create(path)
                .with_context(|| format!("failed to write {}", path.display()))?;
            write_comparisons_csv(&comparisons, std::io::BufWriter::new(out))?;
        }
        match aggregation {
            AggregationArg::Trueskill => trueskill_rank(
                &comparisons,
                matrix.system_names(),
                &file.trueskill_config(args.draw_probability, args.rank_by.map(Into::into)),
            )?,
            AggregationArg::ExpectedWins => {
                expected_wins_rank(&comparisons, matrix.system_names())?
            }
            AggregationArg::Mean => mean_rank(&matrix),
            AggregationArg::Corpus => unreachable!("handled above"),
        }
    };

    let json = serde_json::to_string_pretty(&report)? + "\n";
    match out {
        Some(path) => {
            fs::write(&path, json)
                .with_context(|| format!("failed to write {}", path.display()))?;
            print!("{}", report.to_text_table());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn cmd_metaeval(args: MetaevalArgs, file: &FileConfig) -> Result<()> {
    let human_path = require(args.human.or_else(|| file.human.clone()), "--human")?;
    let report_paths = if args.reports.is_empty() {
        file.reports.clone().unwrap_or_default()
    } else {
        args.reports
    };
    if report_paths.is_empty() {
        bail!("metaeval needs at least one --report");
    }
    let window = args.window.or(file.window);
    let out = args.out.or_else(|| file.out.clone());

    let human = HumanRanking::from_csv_path(&human_path)?;
    let loaded: Vec<(String, RankingReport)> = report_paths
        .iter()
        .map(|path| Ok((label_of(path), read_report(path)?)))
        .collect::<Result<_>>()?;
    let reports: Vec<(String, &RankingReport)> = loaded
        .iter()
        .map(|(label, report)| (label.clone(), report))
        .collect();

    let table = metaeval_report(&human, &reports, window)?;
    for warning in &table.warnings {
        eprintln!("warning: {warning}");
    }
    emit(out.as_deref(), &table.to_csv_string())
}

fn cmd_window(args: WindowArgs, file: &FileConfig) -> Result<()> {
    let human_path = require(args.human.or_else(|| file.human.clone()), "--human")?;
    let report_path = require(args.report.or_else(|| file.report.clone()), "--report")?;
    let window = require(args.window.or(file.window), "--window")?;
    let out = args.out.or_else(|| file.out.clone());
    let plot_json = args.plot_json.or_else(|| file.plot_json.clone());

    let human = HumanRanking::from_csv_path(&human_path)?;
    let report = read_report(&report_path)?;
    let windows = window_analysis(&human, &report, window)?;

    let mut plot = windows.to_plot_json();
    if let (serde_json::Value::Object(map), Some(source)) = (&mut plot, human.source()) {
        map.insert("human".into(), source.into());
    }
    let plot_text = serde_json::to_string_pretty(&plot)? + "\n";

    emit(out.as_deref(), &windows.to_csv_string())?;
    match (&plot_json, &out) {
        (Some(path), _) => fs::write(path, &plot_text)
            .with_context(|| format!("failed to write {}", path.display()))?,
        (None, Some(_)) => print!("{plot_text}"),
        (None, None) => {}
    }
    Ok(())
}
