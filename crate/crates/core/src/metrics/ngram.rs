//! Shared n-gram counting.

use std::collections::HashMap;

pub(crate) type GramCounts<'a> = HashMap<&'a [&'a str], u32>;

/// Multiset of n-grams of order `n` as a count map. Sentences shorter than
/// `n` have no n-grams.
pub(crate) fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> GramCounts<'a> {
    let mut counts = GramCounts::new();
    if n > 0 && tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}
