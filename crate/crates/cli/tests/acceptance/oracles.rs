//! Brute-force re-derivations of the library's math.
//!
//! Everything here recomputes expected values by the slowest route
//! available: recursion with memoization instead of tables, vectors of
//! n-grams scanned per query instead of count maps, raw-moment formulas
//! instead of centered passes. The point is to share no code (and as
//! little structure as possible) with the implementations under test.

use std::collections::HashMap;

type Span = (usize, usize, Vec<String>);

fn suffix_distance(
    source: &[&str],
    target: &[&str],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), usize>,
) -> usize {
    if i == source.len() {
        return target.len() - j;
    }
    if j == target.len() {
        return source.len() - i;
    }
    if let Some(&d) = memo.get(&(i, j)) {
        return d;
    }
    let sub_or_match =
        suffix_distance(source, target, i + 1, j + 1, memo) + usize::from(source[i] != target[j]);
    let del = suffix_distance(source, target, i + 1, j, memo) + 1;
    let ins = suffix_distance(source, target, i, j + 1, memo) + 1;
    let d = sub_or_match.min(del).min(ins);
    memo.insert((i, j), d);
    d
}

#[derive(PartialEq, Clone, Copy)]
enum Step {
    Keep,
    Replace,
    Drop,
    Add,
}

/// Re-derives the edit spans: walk the alignment front to back, always
/// taking the first of match, substitution, deletion, insertion that a
/// minimal-distance completion allows, then fuse runs of the same step.
pub fn edit_spans(source: &[&str], target: &[&str]) -> Vec<Span> {
    let memo = &mut HashMap::new();
    let mut steps = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < source.len() || j < target.len() {
        let remaining = suffix_distance(source, target, i, j, memo);
        let step = if i < source.len()
            && j < target.len()
            && source[i] == target[j]
            && suffix_distance(source, target, i + 1, j + 1, memo) == remaining
        {
            Step::Keep
        } else if i < source.len()
            && j < target.len()
            && suffix_distance(source, target, i + 1, j + 1, memo) + 1 == remaining
        {
            Step::Replace
        } else if i < source.len()
            && suffix_distance(source, target, i + 1, j, memo) + 1 == remaining
        {
            Step::Drop
        } else {
            Step::Add
        };
        steps.push((step, i, j));
        if step != Step::Add {
            i += 1;
        }
        if step != Step::Drop {
            j += 1;
        }
    }

    let mut spans: Vec<Span> = Vec::new();
    let mut last: Option<(Step, usize)> = None;
    for &(step, i, j) in &steps {
        if step == Step::Keep {
            last = None;
            continue;
        }
        let replaced = if step == Step::Drop {
            None
        } else {
            Some(target[j].to_string())
        };
        match last {
            Some((prev, at)) if prev == step => {
                let span = &mut spans[at];
                if step != Step::Add {
                    span.1 += 1;
                }
                span.2.extend(replaced);
            }
            _ => {
                let end = if step == Step::Add { i } else { i + 1 };
                spans.push((i, end, replaced.into_iter().collect()));
                last = Some((step, spans.len() - 1));
            }
        }
    }
    spans
}

fn f_score(tp: f64, fp: f64, fn_: f64, beta: f64) -> f64 {
    if tp + fp == 0.0 && tp + fn_ == 0.0 {
        return 1.0;
    }
    if tp == 0.0 {
        return 0.0;
    }
    let p = tp / (tp + fp);
    let r = tp / (tp + fn_);
    (1.0 + beta * beta) * p * r / (beta * beta * p + r)
}

pub fn edit_f(source: &[&str], hyp: &[&str], refs: &[Vec<&str>], beta: f64) -> f64 {
    let hyp_spans = edit_spans(source, hyp);
    let mut best = f64::NEG_INFINITY;
    for reference in refs {
        let ref_spans = edit_spans(source, reference);
        let tp = hyp_spans.iter().filter(|s| ref_spans.contains(s)).count() as f64;
        let fp = hyp_spans.len() as f64 - tp;
        let fn_ = ref_spans.len() as f64 - tp;
        best = best.max(f_score(tp, fp, fn_, beta));
    }
    best
}

fn grams(tokens: &[&str], n: usize) -> Vec<Vec<String>> {
    if tokens.len() < n {
        return Vec::new();
    }
    (0..=tokens.len() - n)
        .map(|i| tokens[i..i + n].iter().map(|t| t.to_string()).collect())
        .collect()
}

fn count_of(haystack: &[Vec<String>], gram: &[String]) -> f64 {
    haystack.iter().filter(|g| g.as_slice() == gram).count() as f64
}

fn distinct(lists: &[&[Vec<String>]]) -> Vec<Vec<String>> {
    let mut seen: Vec<Vec<String>> = Vec::new();
    for list in lists {
        for gram in *list {
            if !seen.contains(gram) {
                seen.push(gram.clone());
            }
        }
    }
    seen
}

pub fn gleu_single(
    source: &[&str],
    hyp: &[&str],
    reference: &[&str],
    n_max: usize,
    epsilon: f64,
) -> f64 {
    if hyp.is_empty() {
        return if reference.is_empty() { 1.0 } else { 0.0 };
    }
    let mut log_sum = 0.0;
    for n in 1..=n_max {
        let h = grams(hyp, n);
        if h.is_empty() {
            continue;
        }
        let r = grams(reference, n);
        let s = grams(source, n);
        let mut matched = 0.0;
        let mut penalty = 0.0;
        for gram in distinct(&[&h]) {
            let in_ref = count_of(&r, &gram);
            matched += count_of(&h, &gram).min(in_ref);
            if in_ref == 0.0 {
                penalty += count_of(&h, &gram).min(count_of(&s, &gram));
            }
        }
        let p = (matched - penalty).max(0.0) / h.len() as f64;
        log_sum += if p == 0.0 { epsilon.ln() } else { p.ln() };
    }
    let brevity = (1.0 - reference.len() as f64 / hyp.len() as f64)
        .exp()
        .min(1.0);
    brevity * (log_sum / n_max as f64).exp()
}

pub fn green(
    source: &[&str],
    hyp: &[&str],
    refs: &[Vec<&str>],
    n_max: usize,
    beta: f64,
    epsilon: f64,
) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for reference in refs {
        let mut log_sum = 0.0;
        for n in 1..=n_max {
            let s = grams(source, n);
            let h = grams(hyp, n);
            let r = grams(reference, n);
            let mut tp = 0.0;
            let mut made = 0.0;
            let mut needed = 0.0;
            for gram in distinct(&[&s, &h, &r]) {
                let sc = count_of(&s, &gram);
                let hc = count_of(&h, &gram);
                let rc = count_of(&r, &gram);
                let del_needed = sc - sc.min(rc);
                let del_made = sc - sc.min(hc);
                let ins_needed = rc - sc.min(rc);
                let ins_made = hc - sc.min(hc);
                tp += del_needed.min(del_made) + ins_needed.min(ins_made);
                made += del_made + ins_made;
                needed += del_needed + ins_needed;
            }
            let f = f_score(tp, made - tp, needed - tp, beta);
            log_sum += f.max(epsilon).ln();
        }
        best = best.max((log_sum / n_max as f64).exp());
    }
    best
}

/// Raw-moment Pearson, straight off the formula sheet.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let syy: f64 = y.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let numerator = n * sxy - sx * sy;
    let denominator = (n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt();
    (numerator / denominator).clamp(-1.0, 1.0)
}

/// Fractional ranks by counting: one less-than scan and one equality scan
/// per element.
fn midranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let less = values.iter().filter(|&&w| w < v).count() as f64;
            let equal = values.iter().filter(|&&w| w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&midranks(x), &midranks(y))
}
