//! Token-level edit extraction.
//!
//! An edit rewrites a half-open span of source tokens into a replacement
//! sequence. Edits are found by aligning source and target with a
//! unit-cost Levenshtein alignment (match 0; substitution, insertion,
//! deletion 1) and grouping maximal runs of same-type operations. Where
//! several alignments share the minimal cost, operations are chosen left
//! to right in a fixed order (match, then substitution, then deletion,
//! then insertion), so extraction is deterministic.

/// One span rewrite: source tokens in `start..end` become `replacement`.
/// An insertion has `start == end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edit {
    pub start: usize,
    pub end: usize,
    pub replacement: Vec<String>,
}

/// The edits turning one source sentence into one target sentence, sorted
/// by span and non-overlapping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditSet {
    edits: Vec<Edit>,
}

impl EditSet {
    pub fn edits(&self) -> &[Edit] {
        &self.edits
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edit> {
        self.edits.iter()
    }

    /// Replays the edits against the source they were extracted from.
    pub fn apply(&self, source: &[&str]) -> Vec<String> {
        let mut out = Vec::with_capacity(source.len());
        let mut cursor = 0;
        for edit in &self.edits {
            out.extend(source[cursor..edit.start].iter().map(|t| t.to_string()));
            out.extend(edit.replacement.iter().cloned());
            cursor = edit.end;
        }
        out.extend(source[cursor..].iter().map(|t| t.to_string()));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Match,
    Sub,
    Del,
    Ins,
}

/// Extracts the edit set that rewrites `source` into `target`.
pub fn extract_edits(source: &[&str], target: &[&str]) -> EditSet {
    let ops = align(source, target);

    let mut edits = Vec::new();
    let mut si = 0;
    let mut ti = 0;
    let mut run: Option<(Op, usize, Vec<String>)> = None;

    fn flush(run: &mut Option<(Op, usize, Vec<String>)>, si: usize, edits: &mut Vec<Edit>) {
        if let Some((op, start, replacement)) = run.take() {
            let end = if op == Op::Ins { start } else { si };
            edits.push(Edit {
                start,
                end,
                replacement,
            });
        }
    }

    for op in ops {
        match op {
            Op::Match => {
                flush(&mut run, si, &mut edits);
                si += 1;
                ti += 1;
            }
            Op::Sub | Op::Del | Op::Ins => {
                match &mut run {
                    Some((current, _, replacement)) if *current == op => {
                        if op != Op::Del {
                            replacement.push(target[ti].to_string());
                        }
                    }
                    _ => {
                        flush(&mut run, si, &mut edits);
                        let replacement = if op == Op::Del {
                            Vec::new()
                        } else {
                            vec![target[ti].to_string()]
                        };
                        run = Some((op, si, replacement));
                    }
                }
                if op != Op::Ins {
                    si += 1;
                }
                if op != Op::Del {
                    ti += 1;
                }
            }
        }
    }
    flush(&mut run, si, &mut edits);

    EditSet { edits }
}

fn align(source: &[&str], target: &[&str]) -> Vec<Op> {
    let m = source.len();
    let n = target.len();
    // cost[i][j] is the distance between source[i..] and target[j..], so
    // the walk below can move left to right and still know which
    // operations stay on a minimal path.
    let mut cost = vec![vec![0u32; n + 1]; m + 1];
    for (i, row) in cost.iter_mut().enumerate() {
        row[n] = (m - i) as u32;
    }
    for (j, cell) in cost[m].iter_mut().enumerate() {
        *cell = (n - j) as u32;
    }
    for i in (0..m).rev() {
        for j in (0..n).rev() {
            let diag = cost[i + 1][j + 1] + u32::from(source[i] != target[j]);
            cost[i][j] = diag.min(cost[i + 1][j] + 1).min(cost[i][j + 1] + 1);
        }
    }

    let mut ops = Vec::with_capacity(m.max(n));
    let mut i = 0;
    let mut j = 0;
    while i < m || j < n {
        let cur = cost[i][j];
        if i < m && j < n && source[i] == target[j] && cost[i + 1][j + 1] == cur {
            ops.push(Op::Match);
            i += 1;
            j += 1;
        } else if i < m && j < n && cost[i + 1][j + 1] + 1 == cur {
            ops.push(Op::Sub);
            i += 1;
            j += 1;
        } else if i < m && cost[i + 1][j] + 1 == cur {
            ops.push(Op::Del);
            i += 1;
        } else {
            ops.push(Op::Ins);
            j += 1;
        }
    }
    ops
}
