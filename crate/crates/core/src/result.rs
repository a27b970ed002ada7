use std::collections::HashSet;

use serde::Serialize;

use crate::corpus::Document;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedEntry {
    pub document: Document,
    pub score: f64,
    /// 1-based position in the engine's own ordering.
    pub original_rank: usize,
}

/// An engine's answer to one query, normalized to a common shape.
///
/// Ranks are always `1..=n` in entry order and document ids are distinct.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedResult {
    pub query_id: String,
    entries: Vec<RankedEntry>,
}

impl RankedResult {
    pub fn empty(query_id: impl Into<String>) -> Self {
        Self {
            query_id: query_id.into(),
            entries: Vec::new(),
        }
    }

    /// Builds a result from documents already in rank order.
    pub fn from_ordered(
        query_id: impl Into<String>,
        scored: impl IntoIterator<Item = (Document, f64)>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for (i, (document, score)) in scored.into_iter().enumerate() {
            if !(score.is_finite() && score >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "score {score} for `{}` is not a non-negative number",
                    document.id
                )));
            }
            if !seen.insert(document.id.clone()) {
                return Err(Error::DuplicateId(document.id));
            }
            entries.push(RankedEntry {
                document,
                score,
                original_rank: i + 1,
            });
        }
        Ok(Self {
            query_id: query_id.into(),
            entries,
        })
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn truncate(&mut self, k: usize) {
        self.entries.truncate(k);
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.document.id.as_str())
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.entries.iter().map(|e| &e.document)
    }
}
