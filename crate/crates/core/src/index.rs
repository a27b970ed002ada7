//! Inverted index with tf-idf document vectors and cosine ranking.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::analysis::{tokenize, AnalysisConfig};
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::result::RankedResult;

/// Sparse non-negative term weights. Zero weights are never stored.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TermVector(BTreeMap<String, f64>);

impl TermVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `term` to `weight`. Zero removes the term; negative or
    /// non-finite weights are rejected.
    pub fn set(&mut self, term: impl Into<String>, weight: f64) -> Result<()> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "term weight {weight} is not a non-negative number"
            )));
        }
        let term = term.into();
        if weight == 0.0 {
            self.0.remove(&term);
        } else {
            self.0.insert(term, weight);
        }
        Ok(())
    }

    pub fn get(&self, term: &str) -> f64 {
        self.0.get(term).copied().unwrap_or(0.0)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.0.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(t, w)| (t.as_str(), *w))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn norm(&self) -> f64 {
        self.0.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// Multiplies every weight by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|(t, w)| (t.clone(), w * factor)).collect())
    }

    /// Component-wise mean of `vectors`; empty input gives an empty vector.
    pub fn centroid<'a>(vectors: impl IntoIterator<Item = &'a TermVector>) -> Self {
        let mut sum: BTreeMap<String, f64> = BTreeMap::new();
        let mut count = 0usize;
        for v in vectors {
            count += 1;
            for (t, w) in v.iter() {
                *sum.entry(t.to_string()).or_insert(0.0) += w;
            }
        }
        if count == 0 {
            return Self::default();
        }
        let n = count as f64;
        Self(
            sum.into_iter()
                .map(|(t, w)| (t, w / n))
                .filter(|(_, w)| *w > 0.0)
                .collect(),
        )
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for TermVector {
    /// Collects `(term, weight)` pairs, dropping zero and negative weights.
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        Self(
            iter.into_iter()
                .map(|(t, w)| (t.into(), w))
                .filter(|(_, w)| w.is_finite() && *w > 0.0)
                .collect(),
        )
    }
}

/// `(1 + ln tf) * ln(N / df)`, zero for absent or ubiquitous terms.
pub fn term_weight(tf: u32, df: usize, doc_count: usize) -> Result<f64> {
    if doc_count == 0 {
        return Err(Error::InvalidArgument("document count must be at least 1".into()));
    }
    if df > doc_count {
        return Err(Error::InvalidArgument(format!(
            "document frequency {df} exceeds document count {doc_count}"
        )));
    }
    if tf == 0 || df == doc_count {
        return Ok(0.0);
    }
    if df == 0 {
        return Err(Error::InvalidArgument(
            "term occurs but has document frequency 0".into(),
        ));
    }
    Ok((1.0 + f64::from(tf).ln()) * (doc_count as f64 / df as f64).ln())
}

/// Cosine similarity, 0 when either vector is empty. Result is clamped to
/// `[0, 1]`.
pub fn cosine_sim(u: &TermVector, v: &TermVector) -> f64 {
    if u.is_empty() || v.is_empty() {
        return 0.0;
    }
    // Both maps are sorted, so walking the smaller one visits the shared
    // terms in the same order either way and the sum is symmetric.
    let (small, large) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let dot: f64 = small
        .0
        .iter()
        .filter_map(|(t, w)| large.0.get(t).map(|x| w * x))
        .sum();
    if dot == 0.0 {
        return 0.0;
    }
    (dot / (u.norm() * v.norm())).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Posting {
    pub doc_id: String,
    pub tf: u32,
}

/// Immutable after [`build_index`]; safe to share between threads.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    postings: BTreeMap<String, Vec<Posting>>,
    doc_vectors: BTreeMap<String, TermVector>,
    documents: Vec<Document>,
    analysis: AnalysisConfig,
}

pub fn build_index(corpus: &[Document], analysis: &AnalysisConfig) -> Result<InvertedIndex> {
    let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
    let mut position: HashMap<&str, usize> = HashMap::new();
    let mut term_counts = Vec::with_capacity(corpus.len());

    for (i, doc) in corpus.iter().enumerate() {
        if position.insert(doc.id.as_str(), i).is_some() {
            return Err(Error::DuplicateId(doc.id.clone()));
        }
        let mut counts: BTreeMap<String, u32> = BTreeMap::new();
        for term in tokenize(&doc.full_text(), analysis) {
            *counts.entry(term).or_insert(0) += 1;
        }
        for (term, tf) in &counts {
            postings.entry(term.clone()).or_default().push(Posting {
                doc_id: doc.id.clone(),
                tf: *tf,
            });
        }
        term_counts.push(counts);
    }

    let n = corpus.len();
    let mut doc_vectors = BTreeMap::new();
    for (doc, counts) in corpus.iter().zip(term_counts) {
        let mut vector = TermVector::new();
        for (term, tf) in counts {
            let df = postings[&term].len();
            let weight = term_weight(tf, df, n)?;
            vector.set(term, weight)?;
        }
        doc_vectors.insert(doc.id.clone(), vector);
    }

    log::debug!("indexed {} documents, {} terms", n, postings.len());
    Ok(InvertedIndex {
        postings,
        doc_vectors,
        documents: corpus.to_vec(),
        analysis: analysis.clone(),
    })
}

impl InvertedIndex {
    pub fn doc_count(&self) -> usize {
        self.documents.len()
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn analysis(&self) -> &AnalysisConfig {
        &self.analysis
    }

    pub fn postings(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn df(&self, term: &str) -> usize {
        self.postings(term).len()
    }

    pub fn doc_vector(&self, doc_id: &str) -> Option<&TermVector> {
        self.doc_vectors.get(doc_id)
    }

    pub fn doc_vectors(&self) -> &BTreeMap<String, TermVector> {
        &self.doc_vectors
    }

    /// Weights analyzed query terms against this index. Repeated terms raise
    /// the query tf; terms unknown to the index are dropped.
    pub fn query_vector(&self, query_terms: &[String]) -> TermVector {
        let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
        for t in query_terms {
            *counts.entry(t.as_str()).or_insert(0) += 1;
        }
        let n = self.doc_count();
        counts
            .into_iter()
            .filter_map(|(t, tf)| {
                let df = self.df(t);
                (df > 0)
                    .then(|| term_weight(tf, df, n).ok())
                    .flatten()
                    .map(|w| (t, w))
            })
            .collect()
    }
}

/// Scores every document sharing a term with the query and returns the top
/// `k` by cosine, ties broken by ascending id. Zero scores are excluded.
pub fn local_search(index: &InvertedIndex, query_terms: &[String], k: usize) -> RankedResult {
    let query_id = query_terms.join(" ");
    let query = index.query_vector(query_terms);
    if query.is_empty() || k == 0 {
        return RankedResult::empty(query_id);
    }

    let mut candidates: Vec<&str> = query
        .terms()
        .flat_map(|t| index.postings(t).iter().map(|p| p.doc_id.as_str()))
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let mut scored: Vec<(&str, f64)> = candidates
        .into_iter()
        .filter_map(|id| {
            let score = cosine_sim(&query, index.doc_vector(id)?);
            (score > 0.0).then_some((id, score))
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    scored.truncate(k);

    let by_id: HashMap<&str, &Document> =
        index.documents.iter().map(|d| (d.id.as_str(), d)).collect();
    RankedResult::from_ordered(
        query_id,
        scored.into_iter().map(|(id, s)| (by_id[id].clone(), s)),
    )
    .expect("index ids are unique and cosine scores are in [0, 1]")
}
