//! Loading evaluation corpora and sentence-level score matrices.
//!
//! A corpus is a set of parallel line-aligned text files: one source file,
//! one output file per system, and zero or more reference files. Line `i` of
//! every file belongs to sentence `i`. Sentences are whitespace-pretokenized;
//! this crate never retokenizes, it only splits on whitespace.
//!
//! Which files belong together is described by a JSON manifest:
//!
//! ```json
//! {
//!     "source": "src.txt",
//!     "references": ["ref0.txt", "ref1.txt"],
//!     "systems": { "sysA": "a.txt", "sysB": "b.txt" }
//! }
//! ```
//!
//! Relative paths are resolved against the manifest's directory. In
//! reference files an empty line marks a missing alternative reference;
//! every sentence must keep at least one nonempty reference. In source and
//! system files empty lines are ordinary sentences with no tokens.
//!
//! Precomputed sentence scores load through [`load_scores`] from a second
//! kind of manifest, a plain JSON object mapping system names to score
//! files with one float per line.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use crate::error::{Error, Result};

/// Splits a pretokenized sentence into its tokens.
pub fn tokens(sentence: &str) -> Vec<&str> {
    sentence.split_whitespace().collect()
}

/// A line-aligned evaluation corpus: sources, per-system outputs, and
/// per-sentence reference sets.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalCorpus {
    sources: Vec<String>,
    systems: Vec<(String, Vec<String>)>,
    references: Vec<Vec<String>>,
}

impl EvalCorpus {
    /// Builds a corpus from already-loaded sentences.
    ///
    /// `references` holds the reference set of each sentence and may be
    /// empty as a whole when no references exist; otherwise it must have one
    /// nonempty set per sentence.
    pub fn from_parts(
        sources: Vec<String>,
        systems: Vec<(String, Vec<String>)>,
        references: Vec<Vec<String>>,
    ) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::EmptyCorpus("<memory>".into()));
        }
        let mut seen = HashSet::new();
        for (name, outputs) in &systems {
            if name.is_empty() {
                return Err(Error::EmptySystemName);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateSystemName(name.clone()));
            }
            if outputs.len() != sources.len() {
                return Err(Error::LengthMismatch {
                    path: format!("system {name}"),
                    expected: sources.len(),
                    found: outputs.len(),
                });
            }
        }
        if !references.is_empty() {
            if references.len() != sources.len() {
                return Err(Error::LengthMismatch {
                    path: "references".into(),
                    expected: sources.len(),
                    found: references.len(),
                });
            }
            for (i, refs) in references.iter().enumerate() {
                if refs.iter().all(|r| tokens(r).is_empty()) {
                    return Err(Error::MissingReference { sentence: i });
                }
            }
        }
        Ok(Self {
            sources,
            systems,
            references,
        })
    }

    /// Number of sentences.
    pub fn sentence_count(&self) -> usize {
        self.sources.len()
    }

    /// Number of systems.
    pub fn system_count(&self) -> usize {
        self.systems.len()
    }

    /// System names in manifest order.
    pub fn system_names(&self) -> Vec<String> {
        self.systems.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Iterates over `(name, outputs)` pairs in manifest order.
    pub fn systems(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.systems.iter().map(|(n, o)| (n.as_str(), o.as_slice()))
    }

    /// The source sentence at `i`.
    pub fn source(&self, i: usize) -> &str {
        &self.sources[i]
    }

    /// The reference sentences available for sentence `i`. Empty when the
    /// corpus was loaded without reference files.
    pub fn references(&self, i: usize) -> &[String] {
        if self.references.is_empty() {
            &[]
        } else {
            &self.references[i]
        }
    }

    /// Whether any reference file was loaded.
    pub fn has_references(&self) -> bool {
        !self.references.is_empty()
    }
}

/// Manifest describing where the corpus files live.
#[derive(Debug, Clone, Deserialize)]
pub struct CorpusManifest {
    pub source: PathBuf,
    #[serde(default)]
    pub references: Vec<PathBuf>,
    pub systems: OrderedFiles,
}

/// A JSON object of name/path pairs kept in file order so that duplicate
/// names stay visible for validation.
#[derive(Debug, Clone, Default)]
pub struct OrderedFiles(pub Vec<(String, PathBuf)>);

impl<'de> Deserialize<'de> for OrderedFiles {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct FilesVisitor;

        impl<'de> Visitor<'de> for FilesVisitor {
            type Value = OrderedFiles;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map of system name to file path")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some(entry) = map.next_entry::<String, PathBuf>()? {
                    entries.push(entry);
                }
                Ok(OrderedFiles(entries))
            }
        }

        deserializer.deserialize_map(FilesVisitor)
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(text.lines().map(str::to_owned).collect())
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_owned()
    } else {
        base.join(path)
    }
}

fn read_aligned(path: &Path, expected: usize) -> Result<Vec<String>> {
    let lines = read_lines(path)?;
    if lines.len() != expected {
        return Err(Error::LengthMismatch {
            path: path.display().to_string(),
            expected,
            found: lines.len(),
        });
    }
    Ok(lines)
}

/// Loads a corpus from a JSON manifest on disk.
pub fn load_corpus(manifest_path: impl AsRef<Path>) -> Result<EvalCorpus> {
    let manifest_path = manifest_path.as_ref();
    let text = fs::read_to_string(manifest_path)
        .map_err(|e| Error::io(manifest_path.display().to_string(), e))?;
    let manifest: CorpusManifest = serde_json::from_str(&text)
        .map_err(|e| Error::malformed(manifest_path.display().to_string(), e))?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    load_corpus_from_manifest(&manifest, base)
}

/// Loads a corpus from an in-memory manifest, resolving relative paths
/// against `base`.
pub fn load_corpus_from_manifest(manifest: &CorpusManifest, base: &Path) -> Result<EvalCorpus> {
    let source_path = resolve(base, &manifest.source);
    let sources = read_lines(&source_path)?;
    if sources.is_empty() {
        return Err(Error::EmptyCorpus(source_path.display().to_string()));
    }

    let mut systems = Vec::with_capacity(manifest.systems.0.len());
    let mut seen = HashSet::new();
    for (name, path) in &manifest.systems.0 {
        if name.is_empty() {
            return Err(Error::EmptySystemName);
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateSystemName(name.clone()));
        }
        let outputs = read_aligned(&resolve(base, path), sources.len())?;
        systems.push((name.clone(), outputs));
    }

    let mut columns = Vec::with_capacity(manifest.references.len());
    for path in &manifest.references {
        columns.push(read_aligned(&resolve(base, path), sources.len())?);
    }
    let mut references = Vec::new();
    if !columns.is_empty() {
        for i in 0..sources.len() {
            let refs: Vec<String> = columns
                .iter()
                .map(|c| c[i].clone())
                .filter(|r| !tokens(r).is_empty())
                .collect();
            if refs.is_empty() {
                return Err(Error::MissingReference { sentence: i });
            }
            references.push(refs);
        }
    }

    EvalCorpus::from_parts(sources, systems, references)
}

/// Sentence-level scores for every system on a shared set of sentences.
/// Row `i` holds the scores of sentence `i`, one per system.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    system_names: Vec<String>,
    scores: Vec<Vec<f64>>,
}

impl ScoreMatrix {
    /// Builds a matrix, validating shape, finiteness, and name uniqueness.
    pub fn new(system_names: Vec<String>, scores: Vec<Vec<f64>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &system_names {
            if name.is_empty() {
                return Err(Error::EmptySystemName);
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateSystemName(name.clone()));
            }
        }
        for (i, row) in scores.iter().enumerate() {
            if row.len() != system_names.len() {
                return Err(Error::LengthMismatch {
                    path: format!("scores row {i}"),
                    expected: system_names.len(),
                    found: row.len(),
                });
            }
            for (k, s) in row.iter().enumerate() {
                if !s.is_finite() {
                    return Err(Error::NonFiniteScore {
                        system: system_names[k].clone(),
                        line: i + 1,
                    });
                }
            }
        }
        Ok(Self {
            system_names,
            scores,
        })
    }

    /// Number of sentences (rows).
    pub fn sentence_count(&self) -> usize {
        self.scores.len()
    }

    /// Number of systems (columns).
    pub fn system_count(&self) -> usize {
        self.system_names.len()
    }

    /// System names in column order.
    pub fn system_names(&self) -> &[String] {
        &self.system_names
    }

    /// The score of system `k` on sentence `i`.
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.scores[i][k]
    }

    /// The scores of sentence `i`, one per system.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.scores[i]
    }

    /// The scores of system `k` across all sentences.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.scores.iter().map(|row| row[k]).collect()
    }

    /// Per-system mean scores, in column order.
    pub fn means(&self) -> Vec<f64> {
        let m = self.sentence_count() as f64;
        (0..self.system_count())
            .map(|k| self.scores.iter().map(|row| row[k]).sum::<f64>() / m)
            .collect()
    }
}

/// Loads precomputed sentence scores from a JSON manifest mapping system
/// names to score files (one float per line).
///
/// When `sentence_count` is given every file must have exactly that many
/// lines; otherwise the first file sets the expected count.
pub fn load_scores(
    manifest_path: impl AsRef<Path>,
    sentence_count: Option<usize>,
) -> Result<ScoreMatrix> {
    let manifest_path = manifest_path.as_ref();
    let text = fs::read_to_string(manifest_path)
        .map_err(|e| Error::io(manifest_path.display().to_string(), e))?;
    let files: OrderedFiles = serde_json::from_str(&text)
        .map_err(|e| Error::malformed(manifest_path.display().to_string(), e))?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(files.0.len());
    let mut expected = sentence_count;
    let mut seen = HashSet::new();
    for (name, path) in &files.0 {
        if name.is_empty() {
            return Err(Error::EmptySystemName);
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateSystemName(name.clone()));
        }
        let path = resolve(base, path);
        let lines = read_lines(&path)?;
        if lines.is_empty() {
            return Err(Error::EmptyCorpus(path.display().to_string()));
        }
        let expected = *expected.get_or_insert(lines.len());
        if lines.len() != expected {
            return Err(Error::LengthMismatch {
                path: path.display().to_string(),
                expected,
                found: lines.len(),
            });
        }
        let mut column = Vec::with_capacity(lines.len());
        for (i, line) in lines.iter().enumerate() {
            let value: f64 = line.trim().parse().map_err(|_| Error::ParseError {
                path: path.display().to_string(),
                line: i + 1,
                content: line.clone(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonFiniteScore {
                    system: name.clone(),
                    line: i + 1,
                });
            }
            column.push(value);
        }
        columns.push(column);
    }

    let rows = expected.unwrap_or(0);
    let names: Vec<String> = files.0.into_iter().map(|(n, _)| n).collect();
    let scores = (0..rows)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    ScoreMatrix::new(names, scores)
}

/// Writes one score per line, formatted so that reloading reproduces the
/// exact same floating-point values.
pub fn write_score_file(path: impl AsRef<Path>, scores: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for s in scores {
        out.push_str(&format!("{s}\n"));
    }
    fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))
}
