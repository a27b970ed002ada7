//! Rank-based measures over a relevance-flag vector (`flags[i]` is true when
//! the document at rank `i + 1` is relevant).

use crate::error::{EvalError, Result};

/// Recall levels 0.0, 0.1, ..., 1.0.
pub const RECALL_LEVELS: usize = 11;

/// Relevant documents among the first `k`, divided by `k`.
pub fn precision_at_cutoff(flags: &[bool], k: usize) -> Result<f64> {
    if k == 0 {
        return Err(EvalError::InvalidArgument("cutoff must be at least 1".into()));
    }
    let hits = flags.iter().take(k).filter(|&&r| r).count();
    Ok(hits as f64 / k as f64)
}

/// Interpolated precision at the eleven standard recall levels.
///
/// The value at level `r` is the best precision at any rank whose recall is
/// at least `r`. Levels the list never reaches (relevant documents that were
/// not retrieved) get 0.
pub fn interpolated_precision_11pt(flags: &[bool], total_relevant: usize) -> Result<[f64; RECALL_LEVELS]> {
    if total_relevant == 0 {
        return Err(EvalError::Undefined("no relevant documents".into()));
    }
    let retrieved_relevant = flags.iter().filter(|&&r| r).count();
    if retrieved_relevant > total_relevant {
        return Err(EvalError::InvalidArgument(format!(
            "{retrieved_relevant} relevant documents retrieved but only {total_relevant} exist"
        )));
    }

    let mut hits_at = Vec::with_capacity(flags.len());
    let mut precision_at = Vec::with_capacity(flags.len());
    let mut hits = 0usize;
    for (i, &rel) in flags.iter().enumerate() {
        hits += usize::from(rel);
        hits_at.push(hits);
        precision_at.push(hits as f64 / (i + 1) as f64);
    }
    // best_from[i] = max precision at rank i+1 or deeper
    let mut best_from = precision_at.clone();
    for i in (0..best_from.len().saturating_sub(1)).rev() {
        best_from[i] = best_from[i].max(best_from[i + 1]);
    }

    let mut out = [0.0; RECALL_LEVELS];
    for (level, slot) in out.iter_mut().enumerate() {
        // recall >= level/10  <=>  10 * hits >= level * R
        let first = hits_at
            .iter()
            .position(|&h| 10 * h >= level * total_relevant);
        *slot = first.map_or(0.0, |i| best_from[i]);
    }
    Ok(out)
}

/// Rank-sum normalized recall over a universe of `universe` documents:
/// `1 - (sum of relevant ranks - sum_{i=1..R} i) / (R * (N - R))`.
///
/// Only relevant documents present in `flags` count towards `R`.
pub fn normalized_recall(flags: &[bool], universe: usize) -> Result<f64> {
    if universe < flags.len() {
        return Err(EvalError::InvalidArgument(format!(
            "universe of {universe} is smaller than the {}-document list",
            flags.len()
        )));
    }
    let ranks: Vec<usize> = flags
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(i, _)| i + 1)
        .collect();
    let r = ranks.len();
    if r == 0 || r == universe {
        return Err(EvalError::Undefined(format!(
            "{r} of {universe} documents relevant"
        )));
    }
    let actual: usize = ranks.iter().sum();
    let ideal = r * (r + 1) / 2;
    Ok(1.0 - (actual - ideal) as f64 / (r * (universe - r)) as f64)
}

/// Percent change from `a` to `b`; undefined when `a` is 0.
pub fn percent_increase(a: f64, b: f64) -> Option<f64> {
    (a != 0.0).then(|| 100.0 * (b - a) / a)
}

/// Rounds half away from zero to an integer.
pub fn round_percent(p: f64) -> i64 {
    p.round() as i64
}

/// Rounds half away from zero to four decimals.
pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

pub fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}
