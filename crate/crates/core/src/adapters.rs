//! Retrieval adapters: one per engine, each normalizing its engine's output
//! into a [`RankedResult`].

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::tokenize;
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::index::{local_search, InvertedIndex};
use crate::result::RankedResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Local,
    Replay,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EngineDescriptor {
    pub engine_id: String,
    pub display_name: String,
    pub kind: EngineKind,
}

pub trait RetrievalAdapter: Send + Sync {
    fn descriptor(&self) -> &EngineDescriptor;

    /// Runs `query` and returns at most `k` normalized entries.
    fn execute(&self, query: &str, k: usize) -> Result<RankedResult>;
}

/// Searches an in-process index.
pub struct LocalAdapter {
    descriptor: EngineDescriptor,
    index: Arc<InvertedIndex>,
}

impl LocalAdapter {
    pub fn new(engine_id: impl Into<String>, index: Arc<InvertedIndex>) -> Self {
        let engine_id = engine_id.into();
        Self {
            descriptor: EngineDescriptor {
                display_name: format!("Local index ({engine_id})"),
                engine_id,
                kind: EngineKind::Local,
            },
            index,
        }
    }
}

impl RetrievalAdapter for LocalAdapter {
    fn descriptor(&self) -> &EngineDescriptor {
        &self.descriptor
    }

    fn execute(&self, query: &str, k: usize) -> Result<RankedResult> {
        let terms = tokenize(query, self.index.analysis());
        let mut result = local_search(&self.index, &terms, k);
        result.query_id = query.to_string();
        Ok(result)
    }
}

#[derive(Debug, Deserialize)]
struct ReplayLine {
    rank: u64,
    score: f64,
    id: String,
    title: String,
    body: String,
}

/// Replays a canned result file regardless of the query text.
///
/// File format: one `{"rank","score","id","title","body"}` object per line,
/// ranks strictly increasing. The file is read on every call.
pub struct ReplayAdapter {
    descriptor: EngineDescriptor,
    path: PathBuf,
}

impl ReplayAdapter {
    pub fn new(engine_id: impl Into<String>, path: impl Into<PathBuf>) -> Self {
        let engine_id = engine_id.into();
        let path = path.into();
        Self {
            descriptor: EngineDescriptor {
                display_name: format!("Replay ({engine_id})"),
                engine_id,
                kind: EngineKind::Replay,
            },
            path,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl RetrievalAdapter for ReplayAdapter {
    fn descriptor(&self) -> &EngineDescriptor {
        &self.descriptor
    }

    fn execute(&self, query: &str, k: usize) -> Result<RankedResult> {
        let text = fs::read_to_string(&self.path).map_err(|source| Error::Io {
            path: self.path.clone(),
            source,
        })?;
        let mut result = parse_replay(&text, &self.path, query)?;
        result.truncate(k);
        Ok(result)
    }
}

/// Parses and validates a replay file into a [`RankedResult`] that keeps the
/// file's order and scores.
pub fn parse_replay(text: &str, path: &Path, query_id: &str) -> Result<RankedResult> {
    let mut seen = HashSet::new();
    let mut last_rank = 0u64;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::AdapterFormat {
            path: path.to_path_buf(),
            line: lineno + 1,
            msg,
        };
        let rec: ReplayLine = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        if rec.id.is_empty() {
            return Err(err("empty document id".into()));
        }
        if rec.title.is_empty() {
            return Err(err(format!("document `{}` has an empty title", rec.id)));
        }
        if !(rec.score.is_finite() && rec.score >= 0.0) {
            return Err(err(format!("score {} is not a non-negative number", rec.score)));
        }
        if rec.rank <= last_rank {
            return Err(err(format!(
                "rank {} does not follow rank {last_rank}",
                rec.rank
            )));
        }
        if !seen.insert(rec.id.clone()) {
            return Err(err(format!("duplicate document id `{}`", rec.id)));
        }
        last_rank = rec.rank;
        entries.push((Document::new(rec.id, rec.title, rec.body), rec.score));
    }
    RankedResult::from_ordered(query_id, entries)
}

/// The configured engines, in configuration order.
#[derive(Default)]
pub struct AdapterRegistry {
    adapters: Vec<Box<dyn RetrievalAdapter>>,
}

impl AdapterRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, adapter: Box<dyn RetrievalAdapter>) -> Result<()> {
        let id = &adapter.descriptor().engine_id;
        if self.get(id).is_some() {
            return Err(Error::InvalidArgument(format!("engine `{id}` configured twice")));
        }
        self.adapters.push(adapter);
        Ok(())
    }

    pub fn list_engines(&self) -> Vec<EngineDescriptor> {
        self.adapters.iter().map(|a| a.descriptor().clone()).collect()
    }

    pub fn get(&self, engine_id: &str) -> Option<&dyn RetrievalAdapter> {
        self.adapters
            .iter()
            .find(|a| a.descriptor().engine_id == engine_id)
            .map(|a| a.as_ref())
    }

    /// Routes `query` to a single engine. Results from several engines are
    /// never fused here.
    pub fn execute_query(&self, engine_id: &str, query: &str, k: usize) -> Result<RankedResult> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let adapter = self
            .get(engine_id)
            .ok_or_else(|| Error::NoSuchEngine(engine_id.to_string()))?;
        adapter.execute(query, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::AnalysisConfig;
    use crate::index::build_index;

    fn replay_text(n: usize) -> String {
        (1..=n)
            .map(|i| {
                format!(
                    r#"{{"rank":{i},"score":{},"id":"r{i}","title":"T{i}","body":"body {i}"}}"#,
                    1.0 / i as f64
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn registry_with_replay(dir: &Path, n: usize) -> AdapterRegistry {
        let path = dir.join("canned.jsonl");
        fs::write(&path, replay_text(n)).unwrap();
        let index = build_index(&[Document::new("d1", "cat", "dog")], &AnalysisConfig::bare()).unwrap();
        let mut reg = AdapterRegistry::new();
        reg.register(Box::new(LocalAdapter::new("local", Arc::new(index))))
            .unwrap();
        reg.register(Box::new(ReplayAdapter::new("canned", path))).unwrap();
        reg
    }

    #[test]
    fn lists_engines_in_config_order() {
        let dir = tempfile::tempdir().unwrap();
        let reg = registry_with_replay(dir.path(), 5);
        let engines = reg.list_engines();
        assert_eq!(engines.len(), 2);
        assert_eq!(engines[0].kind, EngineKind::Local);
        assert_eq!(engines[1].engine_id, "canned");
        assert!(AdapterRegistry::new().list_engines().is_empty());
    }

    #[test]
    fn replay_passthrough_keeps_order_and_scores() {
        let dir = tempfile::tempdir().unwrap();
        let reg = registry_with_replay(dir.path(), 5);
        let r = reg.execute_query("canned", "anything", 100).unwrap();
        assert_eq!(r.len(), 5);
        assert_eq!(r.ids().collect::<Vec<_>>(), vec!["r1", "r2", "r3", "r4", "r5"]);
        assert_eq!(r.entries()[2].score, 1.0 / 3.0);
        let r = reg.execute_query("canned", "anything", 2).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn unknown_engine() {
        let dir = tempfile::tempdir().unwrap();
        let reg = registry_with_replay(dir.path(), 1);
        assert!(matches!(
            reg.execute_query("nope", "cat", 10),
            Err(Error::NoSuchEngine(id)) if id == "nope"
        ));
    }

    #[test]
    fn duplicate_engine_rejected() {
        let mut reg = AdapterRegistry::new();
        reg.register(Box::new(ReplayAdapter::new("x", "a"))).unwrap();
        assert!(reg.register(Box::new(ReplayAdapter::new("x", "b"))).is_err());
    }

    #[test]
    fn malformed_replay_names_the_line() {
        let path = Path::new("canned.jsonl");
        let no_body = "{\"rank\":1,\"score\":1.0,\"id\":\"a\",\"title\":\"A\",\"body\":\"x\"}\n{\"rank\":2,\"score\":0.5,\"id\":\"b\",\"title\":\"B\"}";
        match parse_replay(no_body, path, "q") {
            Err(Error::AdapterFormat { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad_rank = "{\"rank\":2,\"score\":1.0,\"id\":\"a\",\"title\":\"A\",\"body\":\"\"}\n{\"rank\":2,\"score\":0.5,\"id\":\"b\",\"title\":\"B\",\"body\":\"\"}";
        assert!(matches!(
            parse_replay(bad_rank, path, "q"),
            Err(Error::AdapterFormat { line: 2, .. })
        ));
        assert!(matches!(
            parse_replay("not json", path, "q"),
            Err(Error::AdapterFormat { line: 1, .. })
        ));
        let neg = r#"{"rank":1,"score":-0.5,"id":"a","title":"A","body":""}"#;
        assert!(parse_replay(neg, path, "q").is_err());
    }

    #[test]
    fn missing_replay_file_is_io_error() {
        let reg = {
            let mut reg = AdapterRegistry::new();
            reg.register(Box::new(ReplayAdapter::new("gone", "/nonexistent/x.jsonl")))
                .unwrap();
            reg
        };
        assert!(matches!(reg.execute_query("gone", "q", 5), Err(Error::Io { .. })));
    }
}
