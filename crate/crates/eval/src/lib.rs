//! Evaluation of ranked runs against binary relevance judgments.
//!
//! Provides 11-point interpolated precision, precision at cutoffs and
//! rank-sum normalized recall, plus a side-by-side comparison of two runs
//! over the same queries.

pub mod error;
pub mod metrics;
pub mod qrels;
pub mod report;
pub mod run;

pub use error::{EvalError, Result};
pub use metrics::{interpolated_precision_11pt, normalized_recall, precision_at_cutoff};
pub use qrels::QrelSet;
pub use report::{comparison_report, ComparisonReport, ComparisonRow, RecallTable};
pub use run::Run;
