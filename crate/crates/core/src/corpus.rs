//! Documents and the JSON-lines corpus format.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A retrieved (or retrievable) document with its full text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub body: String,
}

impl Document {
    pub fn new(id: impl Into<String>, title: impl Into<String>, body: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            title: title.into(),
            body: body.into(),
        }
    }

    /// Title and body joined for indexing.
    pub fn full_text(&self) -> String {
        format!("{}\n{}", self.title, self.body)
    }
}

/// Reads a corpus file: one `{"id","title","body"}` object per line.
pub fn load_corpus(path: &Path) -> Result<Vec<Document>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&text, path)
}

pub fn parse_corpus(text: &str, path: &Path) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::CorpusFormat {
            path: path.to_path_buf(),
            line: lineno + 1,
            msg,
        };
        let doc: Document = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        if doc.id.is_empty() {
            return Err(err("empty document id".into()));
        }
        if doc.title.is_empty() {
            return Err(err(format!("document `{}` has an empty title", doc.id)));
        }
        if !seen.insert(doc.id.clone()) {
            return Err(Error::DuplicateId(doc.id));
        }
        docs.push(doc);
    }
    Ok(docs)
}
