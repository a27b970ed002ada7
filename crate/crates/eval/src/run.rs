use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{EvalError, Result};

/// Ranked document lists per query.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Run {
    lists: BTreeMap<String, Vec<(String, f64)>>,
}

impl Run {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a ranked list for `query`, rank 1 first.
    pub fn insert(&mut self, query: impl Into<String>, ranking: Vec<(String, f64)>) -> Result<()> {
        let query = query.into();
        let mut seen = HashSet::new();
        for (doc, _) in &ranking {
            if !seen.insert(doc.as_str()) {
                return Err(EvalError::InvalidArgument(format!(
                    "document `{doc}` appears twice for query `{query}`"
                )));
            }
        }
        self.lists.insert(query, ranking);
        Ok(())
    }

    /// Adds a list whose scores descend from its length to 1.
    pub fn insert_ids(&mut self, query: impl Into<String>, ids: Vec<String>) -> Result<()> {
        let n = ids.len();
        self.insert(
            query,
            ids.into_iter()
                .enumerate()
                .map(|(i, d)| (d, (n - i) as f64))
                .collect(),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Parses `query_id rank doc_id score` lines. Lines may come in any
    /// order; each query is sorted by rank.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut rows: BTreeMap<String, Vec<(u64, String, f64, usize)>> = BTreeMap::new();
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
            let [query, rank, doc, score] = fields[..] else {
                return Err(err(format!("expected 4 fields, found {}", fields.len())));
            };
            let rank: u64 = rank
                .parse()
                .map_err(|_| err(format!("rank `{rank}` is not a positive integer")))?;
            let score: f64 = score
                .parse()
                .map_err(|_| err(format!("score `{score}` is not a number")))?;
            rows.entry(query.to_string())
                .or_default()
                .push((rank, doc.to_string(), score, lineno + 1));
        }
        let mut run = Self::new();
        for (query, mut entries) in rows {
            entries.sort_by_key(|e| e.0);
            let mut seen = HashSet::new();
            for (rank, doc, _, line) in &entries {
                if !seen.insert(doc.clone()) {
                    return Err(EvalError::Format {
                        path: path.to_path_buf(),
                        line: *line,
                        msg: format!("document `{doc}` repeated for query `{query}` (rank {rank})"),
                    });
                }
            }
            run.lists
                .insert(query, entries.into_iter().map(|(_, d, s, _)| (d, s)).collect());
        }
        Ok(run)
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> {
        self.lists.keys().map(String::as_str)
    }

    pub fn ranking(&self, query: &str) -> Option<Vec<String>> {
        self.lists
            .get(query)
            .map(|l| l.iter().map(|(d, _)| d.clone()).collect())
    }

    /// Serializes as `query_id rank doc_id score` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (query, list) in &self.lists {
            for (i, (doc, score)) in list.iter().enumerate() {
                writeln!(out, "{query} {} {doc} {score}", i + 1).unwrap();
            }
        }
        out
    }
}
