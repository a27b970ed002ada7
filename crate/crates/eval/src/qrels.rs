use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::error::{EvalError, Result};

/// Binary relevance judgments keyed by query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QrelSet {
    judgments: BTreeMap<String, BTreeMap<String, u8>>,
}

impl QrelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, query: impl Into<String>, doc: impl Into<String>, relevant: bool) {
        self.judgments
            .entry(query.into())
            .or_default()
            .insert(doc.into(), u8::from(relevant));
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Parses `query_id doc_id rel` lines. Any positive `rel` counts as
    /// relevant.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut qrels = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let err = |msg: String| EvalError::Format {
                path: path.to_path_buf(),
                line: lineno + 1,
                msg,
            };
            let [query, doc, rel] = fields[..] else {
                return Err(err(format!("expected 3 fields, found {}", fields.len())));
            };
            let rel: i64 = rel
                .parse()
                .map_err(|_| err(format!("relevance `{rel}` is not an integer")))?;
            qrels.insert(query, doc, rel > 0);
        }
        Ok(qrels)
    }

    pub fn contains_query(&self, query: &str) -> bool {
        self.judgments.contains_key(query)
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> {
        self.judgments.keys().map(String::as_str)
    }

    pub fn is_relevant(&self, query: &str, doc: &str) -> bool {
        self.judgments
            .get(query)
            .and_then(|j| j.get(doc))
            .is_some_and(|&r| r > 0)
    }

    pub fn relevant(&self, query: &str) -> BTreeSet<&str> {
        self.judgments
            .get(query)
            .into_iter()
            .flatten()
            .filter(|(_, &r)| r > 0)
            .map(|(d, _)| d.as_str())
            .collect()
    }

    pub fn relevant_count(&self, query: &str) -> usize {
        self.relevant(query).len()
    }

    /// Relevance flag for each entry of `ranking`.
    pub fn flags(&self, query: &str, ranking: &[String]) -> Vec<bool> {
        ranking.iter().map(|d| self.is_relevant(query, d)).collect()
    }
}
