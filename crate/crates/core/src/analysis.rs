//! Text analysis: case folding, alphanumeric splitting, stopword removal and
//! optional light suffix stripping.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    stopwords: HashSet<String>,
    pub stemming: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            stopwords: parse_stopwords(DEFAULT_STOPWORDS),
            stemming: false,
        }
    }
}

impl AnalysisConfig {
    pub fn new<I, S>(stopwords: I, stemming: bool) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            stopwords: stopwords.into_iter().map(Into::into).collect(),
            stemming,
        }
    }

    /// No stopwords, no stemming.
    pub fn bare() -> Self {
        Self::new(Vec::<String>::new(), false)
    }

    /// Loads a stopword file: one lowercase word per line, blank lines ignored.
    pub fn from_stopword_file(path: &Path, stemming: bool) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self {
            stopwords: parse_stopwords(&text),
            stemming,
        })
    }

    pub fn with_stemming(mut self, stemming: bool) -> Self {
        self.stemming = stemming;
        self
    }

    pub fn is_stopword(&self, term: &str) -> bool {
        self.stopwords.contains(term)
    }
}

fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Splits `text` into analyzed terms.
pub fn tokenize(text: &str, config: &AnalysisConfig) -> Vec<String> {
    raw_tokens(text)
        .filter_map(|tok| analyze_token(tok, config))
        .collect()
}

/// Like [`tokenize`] but keeps sentence-like segments apart, so that phrase
/// extraction never joins words across `.`, `!`, `?`, `;` or `:`.
pub fn tokenize_segments(text: &str, config: &AnalysisConfig) -> Vec<Vec<String>> {
    text.split(['.', '!', '?', ';', ':'])
        .map(|segment| tokenize(segment, config))
        .filter(|terms| !terms.is_empty())
        .collect()
}

fn raw_tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
}

fn analyze_token(token: &str, config: &AnalysisConfig) -> Option<String> {
    let lower = token.to_lowercase();
    if config.is_stopword(&lower) {
        return None;
    }
    if config.stemming {
        let stemmed = light_stem(&lower);
        if config.is_stopword(&stemmed) {
            return None;
        }
        Some(stemmed)
    } else {
        Some(lower)
    }
}

/// Strips a few common English inflections. The remaining stem keeps at
/// least three characters.
pub fn light_stem(term: &str) -> String {
    const MIN_STEM: usize = 3;
    let len = term.chars().count();
    let strip = |suffix: &str| -> Option<String> {
        let rest = term.strip_suffix(suffix)?;
        (rest.chars().count() >= MIN_STEM).then(|| rest.to_string())
    };

    if let Some(stem) = strip("ies") {
        return stem + "y";
    }
    if term.ends_with("sses") {
        return term[..term.len() - 2].to_string();
    }
    if let Some(stem) = strip("ing").or_else(|| strip("ed")) {
        return stem;
    }
    if len > MIN_STEM && term.ends_with('s') && !term.ends_with("ss") && !term.ends_with("us") {
        return term[..term.len() - 1].to_string();
    }
    term.to_string()
}
