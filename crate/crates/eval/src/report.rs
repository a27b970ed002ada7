//! Two-run comparison: interpolated precision by recall level, precision at
//! cutoffs, and mean normalized recall, each with a percent increase.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::metrics::{
    interpolated_precision_11pt, mean, normalized_recall, percent_increase, precision_at_cutoff,
    round4, round_percent, RECALL_LEVELS,
};
use crate::qrels::QrelSet;
use crate::run::Run;

pub const DEFAULT_CUTOFFS: [usize; 4] = [5, 10, 20, 30];

/// Means are rounded to four decimals; the increase is a rounded percent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub a: f64,
    pub b: f64,
    pub increase: Option<i64>,
}

impl ComparisonRow {
    /// Row from unrounded means.
    pub fn from_means(a: f64, b: f64) -> Self {
        Self {
            a: round4(a),
            b: round4(b),
            increase: percent_increase(a, b).map(round_percent),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallLevelRow {
    pub recall: f64,
    #[serde(flatten)]
    pub row: ComparisonRow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallTable {
    pub levels: Vec<RecallLevelRow>,
    pub average: ComparisonRow,
}

impl RecallTable {
    /// Builds the table from the two mean-precision columns.
    ///
    /// The average increase is the mean of the unrounded per-level
    /// increases, not the increase between the column means.
    pub fn from_columns(a: &[f64; RECALL_LEVELS], b: &[f64; RECALL_LEVELS]) -> Self {
        let levels = a
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (&a, &b))| RecallLevelRow {
                recall: i as f64 / 10.0,
                row: ComparisonRow::from_means(a, b),
            })
            .collect();
        let increases: Vec<f64> = a
            .iter()
            .zip(b)
            .filter_map(|(&a, &b)| percent_increase(a, b))
            .collect();
        let average = ComparisonRow {
            a: round4(mean(a.iter().copied()).unwrap_or(0.0)),
            b: round4(mean(b.iter().copied()).unwrap_or(0.0)),
            increase: mean(increases).map(round_percent),
        };
        Self { levels, average }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffRow {
    pub cutoff: usize,
    #[serde(flatten)]
    pub row: ComparisonRow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub queries: Vec<String>,
    pub recall_precision: RecallTable,
    pub precision_at: Vec<CutoffRow>,
    pub normalized_recall: ComparisonRow,
    pub normalized_recall_queries: usize,
    pub warnings: Vec<String>,
}

struct Judged {
    flags_a: Vec<bool>,
    flags_b: Vec<bool>,
    total_relevant: usize,
}

/// Compares `run_a` against `run_b` over the queries both runs answer and
/// the qrels judge. Everything else is skipped with a warning.
pub fn comparison_report(
    run_a: &Run,
    run_b: &Run,
    qrels: &QrelSet,
    cutoffs: &[usize],
) -> Result<ComparisonReport> {
    let mut warnings = Vec::new();
    let mut warn = |msg: String| {
        log::warn!("{msg}");
        warnings.push(msg);
    };

    let in_a: BTreeSet<&str> = run_a.queries().collect();
    let in_b: BTreeSet<&str> = run_b.queries().collect();
    for q in in_a.symmetric_difference(&in_b) {
        warn(format!("query `{q}` is not in both runs; skipped"));
    }

    let mut queries = Vec::new();
    let mut judged = Vec::new();
    for &q in in_a.intersection(&in_b) {
        if !qrels.contains_query(q) {
            warn(format!("query `{q}` has no judgments; skipped"));
            continue;
        }
        let total_relevant = qrels.relevant_count(q);
        if total_relevant == 0 {
            warn(format!("query `{q}` has no relevant documents; skipped"));
            continue;
        }
        let a = run_a.ranking(q).unwrap_or_default();
        let b = run_b.ranking(q).unwrap_or_default();
        queries.push(q.to_string());
        judged.push(Judged {
            flags_a: qrels.flags(q, &a),
            flags_b: qrels.flags(q, &b),
            total_relevant,
        });
    }

    let mut sum_a = [0.0; RECALL_LEVELS];
    let mut sum_b = [0.0; RECALL_LEVELS];
    for j in &judged {
        let pa = interpolated_precision_11pt(&j.flags_a, j.total_relevant)?;
        let pb = interpolated_precision_11pt(&j.flags_b, j.total_relevant)?;
        for i in 0..RECALL_LEVELS {
            sum_a[i] += pa[i];
            sum_b[i] += pb[i];
        }
    }
    let n = judged.len().max(1) as f64;
    let recall_precision = RecallTable::from_columns(&sum_a.map(|s| s / n), &sum_b.map(|s| s / n));

    let precision_at = cutoffs
        .iter()
        .map(|&k| {
            let a = mean(judged.iter().map(|j| precision_at_cutoff(&j.flags_a, k)).collect::<Result<Vec<_>>>()?);
            let b = mean(judged.iter().map(|j| precision_at_cutoff(&j.flags_b, k)).collect::<Result<Vec<_>>>()?);
            Ok(CutoffRow {
                cutoff: k,
                row: ComparisonRow::from_means(a.unwrap_or(0.0), b.unwrap_or(0.0)),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut nr_a = Vec::new();
    let mut nr_b = Vec::new();
    for (q, j) in queries.iter().zip(&judged) {
        match (
            normalized_recall(&j.flags_a, j.flags_a.len()),
            normalized_recall(&j.flags_b, j.flags_b.len()),
        ) {
            (Ok(a), Ok(b)) => {
                nr_a.push(a);
                nr_b.push(b);
            }
            (Err(e), _) | (_, Err(e)) => {
                warn(format!("normalized recall skipped for `{q}`: {e}"));
            }
        }
    }
    let normalized_recall_queries = nr_a.len();
    let normalized_recall = ComparisonRow::from_means(mean(nr_a).unwrap_or(0.0), mean(nr_b).unwrap_or(0.0));

    Ok(ComparisonReport {
        queries,
        recall_precision,
        precision_at,
        normalized_recall,
        normalized_recall_queries,
        warnings,
    })
}

fn fmt_increase(p: Option<i64>) -> String {
    p.map_or_else(|| "-".to_string(), |p| p.to_string())
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Queries evaluated: {}", self.queries.len())?;
        writeln!(f)?;
        writeln!(f, "{:<14}{:>10}{:>10}{:>12}", "Recall Level", "Run A", "Run B", "% Increase")?;
        for l in &self.recall_precision.levels {
            writeln!(
                f,
                "{:<14.1}{:>10.4}{:>10.4}{:>12}",
                l.recall,
                l.row.a,
                l.row.b,
                fmt_increase(l.row.increase)
            )?;
        }
        let avg = &self.recall_precision.average;
        writeln!(
            f,
            "{:<14}{:>10.4}{:>10.4}{:>12}",
            "Average",
            avg.a,
            avg.b,
            fmt_increase(avg.increase)
        )?;
        writeln!(f)?;
        writeln!(f, "{:<14}{:>10}{:>10}{:>12}", "Cutoff", "Run A", "Run B", "% Increase")?;
        for c in &self.precision_at {
            writeln!(
                f,
                "{:<14}{:>10.4}{:>10.4}{:>12}",
                format!("P@{}", c.cutoff),
                c.row.a,
                c.row.b,
                fmt_increase(c.row.increase)
            )?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "{:<14}{:>10.4}{:>10.4}{:>12}",
            "Norm. recall",
            self.normalized_recall.a,
            self.normalized_recall.b,
            fmt_increase(self.normalized_recall.increase)
        )?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
