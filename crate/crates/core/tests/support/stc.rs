//! Brute-force suffix-tree clustering references: exhaustive shared-phrase
//! enumeration and breadth-first overlap components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use docmap_core::cluster::{score_base_cluster, AnalyzedDoc, BaseCluster};
use docmap_core::{AnalysisConfig, Document};

pub fn fixture() -> Vec<Document> {
    vec![
        Document::new("a", "Digital library search", "A digital library search engine. Users browse the collection."),
        Document::new("b", "Digital library", "Building a digital library search interface for users."),
        Document::new("c", "Search engine ranking", "The search engine ranks documents. Users browse results."),
        Document::new("d", "Library catalogue", "A public library catalogue lists books."),
        Document::new("e", "Ranking documents", "Ranking documents by search engine scores."),
    ]
}

pub type Groups = BTreeMap<Vec<String>, BTreeSet<String>>;

/// Every contiguous term run up to `max_len` inside one segment, grouped by
/// phrase, keeping only phrases shared by two or more documents.
pub fn enumerate_shared(docs: &[AnalyzedDoc], max_len: usize) -> Groups {
    let mut groups: Groups = BTreeMap::new();
    for d in docs {
        for seg in &d.segments {
            for i in 0..seg.len() {
                for j in i + 1..=seg.len().min(i + max_len) {
                    groups.entry(seg[i..j].to_vec()).or_default().insert(d.id.clone());
                }
            }
        }
    }
    groups.retain(|_, m| m.len() >= 2);
    groups
}

pub fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    haystack.len() > needle.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

pub fn oracle_bases(docs: &[AnalyzedDoc], max_len: usize) -> BTreeSet<(Vec<String>, Vec<String>, u64)> {
    let groups = enumerate_shared(docs, max_len);
    groups
        .iter()
        .filter(|(p, m)| {
            !groups
                .iter()
                .any(|(q, mq)| contains_run(q, p) && mq == *m)
        })
        .map(|(p, m)| {
            (
                p.clone(),
                m.iter().cloned().collect(),
                score_base_cluster(m.len(), p.len()).to_bits(),
            )
        })
        .collect()
}

pub fn as_set(bases: &[BaseCluster]) -> BTreeSet<(Vec<String>, Vec<String>, u64)> {
    bases
        .iter()
        .map(|b| {
            (
                b.phrase.terms().to_vec(),
                b.members.iter().cloned().collect(),
                b.score.to_bits(),
            )
        })
        .collect()
}

pub fn analyzed(docs: &[Document]) -> Vec<AnalyzedDoc> {
    let cfg = AnalysisConfig::default();
    docs.iter().map(|d| AnalyzedDoc::from_document(d, &cfg)).collect()
}

/// Breadth-first components over the explicit overlap graph.
pub fn oracle_components(bases: &[BaseCluster], tau: f64) -> BTreeSet<BTreeSet<String>> {
    let linked = |a: &BaseCluster, b: &BaseCluster| {
        let shared = a.members.intersection(&b.members).count() as f64;
        shared / a.members.len() as f64 > tau && shared / b.members.len() as f64 > tau
    };
    let mut seen = vec![false; bases.len()];
    let mut out = BTreeSet::new();
    for start in 0..bases.len() {
        if seen[start] {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            members.extend(bases[i].members.iter().cloned());
            for j in 0..bases.len() {
                if !seen[j] && linked(&bases[i], &bases[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.insert(members);
    }
    out
}
