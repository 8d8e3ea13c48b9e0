//! Shared fixtures for the acceptance suite.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gecrank"))
        .args(args)
        .output()
        .expect("failed to spawn gecrank")
}

pub fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
}

pub fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

/// The two-sentence, three-system corpus: one system overcorrects, one
/// undercorrects, one matches the reference.
pub fn write_toy_corpus(dir: &Path) -> PathBuf {
    let write = |name: &str, content: &str| fs::write(dir.join(name), content).unwrap();
    write("src.txt", "He play a tennis\nI goes to school\n");
    write("ref.txt", "He plays tennis\nI go to school\n");
    write("a.txt", "He plays a tennis\nI go to school\n");
    write("b.txt", "He play tennis\nI goes to school\n");
    write("c.txt", "He plays tennis\nI go to school\n");
    let manifest = dir.join("corpus.json");
    fs::write(
        &manifest,
        r#"{
  "source": "src.txt",
  "references": ["ref.txt"],
  "systems": {"sysA": "a.txt", "sysB": "b.txt", "sysC": "c.txt"}
}"#,
    )
    .unwrap();
    manifest
}

pub const VOCAB: [&str; 8] = ["the", "a", "cat", "dog", "sits", "on", "mats", "quietly"];

pub fn random_sentence(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<&'static str> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| VOCAB[rng.gen_range(0..VOCAB.len())])
        .collect()
}

/// Corrupts a sentence with independent token substitutions, deletions,
/// and insertions, producing the kind of near-miss pair the metrics see.
pub fn mutate_sentence(rng: &mut ChaCha8Rng, base: &[&'static str]) -> Vec<&'static str> {
    let mut out = Vec::with_capacity(base.len() + 2);
    for &token in base {
        match rng.gen_range(0..10) {
            0 => {}
            1 => out.push(VOCAB[rng.gen_range(0..VOCAB.len())]),
            2 => {
                out.push(token);
                out.push(VOCAB[rng.gen_range(0..VOCAB.len())]);
            }
            _ => out.push(token),
        }
    }
    if rng.gen_range(0..10) == 0 {
        out.push(VOCAB[rng.gen_range(0..VOCAB.len())]);
    }
    out
}
