//! Shared-phrase clustering of a retrieved set.
//!
//! Every document is split into analyzed segments and all segment suffixes,
//! cut at `max_phrase_len` terms, go into one generalized suffix trie. Each
//! trie node is a phrase; nodes shared by at least two documents whose
//! member set cannot be kept by any one-term extension become base clusters.
//! The best `top_bases` base clusters are then linked when they overlap by
//! more than `merge_threshold` in both directions, and the connected
//! components are the final clusters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{tokenize_segments, AnalysisConfig};
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::index::{cosine_sim, TermVector};
use crate::layers::{normalize_brightness, LayerScores};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusterConfig {
    pub max_phrase_len: usize,
    pub top_bases: usize,
    pub merge_threshold: f64,
    /// Number of clusters that become map layers.
    pub tabs: usize,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            max_phrase_len: 6,
            top_bases: 30,
            merge_threshold: 0.5,
            tabs: 5,
        }
    }
}

impl ClusterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_phrase_len == 0 {
            return Err(Error::InvalidArgument("cluster.max_phrase_len must be >= 1".into()));
        }
        if !(self.merge_threshold > 0.0 && self.merge_threshold <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "cluster.merge_threshold {} is outside (0, 1]",
                self.merge_threshold
            )));
        }
        Ok(())
    }
}

/// A contiguous run of analyzed terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Phrase(pub Vec<String>);

impl Phrase {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseCluster {
    pub phrase: Phrase,
    pub members: BTreeSet<String>,
    pub score: f64,
}

/// A document reduced to analyzed segments. Phrases never cross segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzedDoc {
    pub id: String,
    pub segments: Vec<Vec<String>>,
}

impl AnalyzedDoc {
    /// Title and body sentences become separate segments.
    pub fn from_document(doc: &Document, analysis: &AnalysisConfig) -> Self {
        let mut segments = tokenize_segments(&doc.title, analysis);
        segments.extend(tokenize_segments(&doc.body, analysis));
        Self {
            id: doc.id.clone(),
            segments,
        }
    }
}

/// `members * f(len)` with `f(1) = 0.5` and `f(len) = min(len, 6)` otherwise.
pub fn score_base_cluster(members: usize, phrase_len: usize) -> f64 {
    let weight = match phrase_len {
        0 | 1 => 0.5,
        n => n.min(6) as f64,
    };
    members as f64 * weight
}

#[derive(Default)]
struct TrieNode {
    children: BTreeMap<String, usize>,
    docs: BTreeSet<usize>,
    left_context: BTreeSet<String>,
}

struct SuffixTrie {
    nodes: Vec<TrieNode>,
}

impl SuffixTrie {
    fn build(docs: &[AnalyzedDoc], max_len: usize) -> Self {
        let mut trie = Self {
            nodes: vec![TrieNode::default()],
        };
        for (di, doc) in docs.iter().enumerate() {
            for seg in &doc.segments {
                for start in 0..seg.len() {
                    let left = start.checked_sub(1).map(|i| &seg[i]);
                    let mut node = 0;
                    for term in seg.iter().skip(start).take(max_len) {
                        node = trie.child_or_insert(node, term);
                        let n = &mut trie.nodes[node];
                        n.docs.insert(di);
                        if let Some(l) = left {
                            n.left_context.insert(l.clone());
                        }
                    }
                }
            }
        }
        trie
    }

    fn child_or_insert(&mut self, node: usize, term: &str) -> usize {
        if let Some(&c) = self.nodes[node].children.get(term) {
            return c;
        }
        let c = self.nodes.len();
        self.nodes.push(TrieNode::default());
        self.nodes[node].children.insert(term.to_string(), c);
        c
    }

    fn find<'a>(&self, path: impl IntoIterator<Item = &'a String>) -> Option<usize> {
        path.into_iter()
            .try_fold(0, |node, t| self.nodes[node].children.get(t).copied())
    }
}

/// One base cluster per maximal phrase shared by at least two documents.
///
/// Output is sorted by score descending, then phrase.
pub fn build_base_clusters(docs: &[AnalyzedDoc], max_phrase_len: usize) -> Result<Vec<BaseCluster>> {
    if docs.len() < 2 {
        return Err(Error::TooFewDocuments(docs.len()));
    }
    if max_phrase_len == 0 {
        return Err(Error::InvalidArgument("max_phrase_len must be >= 1".into()));
    }
    let trie = SuffixTrie::build(docs, max_phrase_len);

    let mut bases = Vec::new();
    let mut path: Vec<String> = Vec::new();
    let mut stack: Vec<(usize, usize)> = trie.nodes[0]
        .children
        .values()
        .rev()
        .map(|&c| (c, 1))
        .collect();
    let mut labels: HashMap<usize, &str> = HashMap::new();
    for node in &trie.nodes {
        for (t, &c) in &node.children {
            labels.insert(c, t);
        }
    }

    while let Some((id, depth)) = stack.pop() {
        path.truncate(depth - 1);
        path.push(labels[&id].to_string());
        let node = &trie.nodes[id];
        if node.docs.len() < 2 {
            // Descendants only ever lose documents.
            continue;
        }
        stack.extend(node.children.values().rev().map(|&c| (c, depth + 1)));

        let right_kept = node
            .children
            .values()
            .any(|&c| trie.nodes[c].docs == node.docs);
        let left_kept = depth < max_phrase_len
            && node.left_context.iter().any(|l| {
                trie.find(std::iter::once(l).chain(path.iter()))
                    .is_some_and(|n| trie.nodes[n].docs == node.docs)
            });
        if right_kept || left_kept {
            continue;
        }
        let members: BTreeSet<String> = node.docs.iter().map(|&d| docs[d].id.clone()).collect();
        bases.push(BaseCluster {
            score: score_base_cluster(members.len(), depth),
            phrase: Phrase(path.clone()),
            members,
        });
    }

    sort_bases(&mut bases);
    Ok(bases)
}

fn sort_bases(bases: &mut [BaseCluster]) {
    bases.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.phrase.cmp(&b.phrase)));
}

/// A merged group of base clusters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    pub cluster_id: String,
    pub members: BTreeSet<String>,
    /// Constituent base clusters, best first.
    pub bases: Vec<BaseCluster>,
    /// Sum of the constituent base scores.
    pub score: f64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn overlaps(a: &BTreeSet<String>, b: &BTreeSet<String>, threshold: f64) -> bool {
    let shared = a.intersection(b).count() as f64;
    shared / a.len() as f64 > threshold && shared / b.len() as f64 > threshold
}

/// Merges the best `top_bases` base clusters into connected components of
/// the overlap graph. Clusters come out ordered by summed base score.
pub fn merge_base_clusters(
    bases: &[BaseCluster],
    top_bases: usize,
    overlap_threshold: f64,
) -> Result<Vec<Cluster>> {
    if !(overlap_threshold > 0.0 && overlap_threshold <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "overlap threshold {overlap_threshold} is outside (0, 1]"
        )));
    }
    let mut top = bases.to_vec();
    sort_bases(&mut top);
    top.truncate(top_bases);
    top.retain(|b| !b.members.is_empty());

    let mut uf = UnionFind::new(top.len());
    for i in 0..top.len() {
        for j in i + 1..top.len() {
            if overlaps(&top[i].members, &top[j].members, overlap_threshold) {
                uf.union(i, j);
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<BaseCluster>> = BTreeMap::new();
    for (i, base) in top.into_iter().enumerate() {
        let root = uf.find(i);
        groups.entry(root).or_default().push(base);
    }

    let mut clusters: Vec<Cluster> = groups
        .into_values()
        .map(|bases| Cluster {
            cluster_id: String::new(),
            members: bases.iter().flat_map(|b| b.members.iter().cloned()).collect(),
            score: bases.iter().map(|b| b.score).sum(),
            bases,
        })
        .collect();
    clusters.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.members.cmp(&b.members))
            .then_with(|| a.bases[0].phrase.cmp(&b.bases[0].phrase))
    });
    for (i, c) in clusters.iter_mut().enumerate() {
        c.cluster_id = (i + 1).to_string();
    }
    Ok(clusters)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterLabel {
    pub first: String,
    pub second: Option<String>,
}

impl fmt::Display for ClusterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.second {
            Some(second) => write!(f, "{} {}", self.first, second),
            None => f.write_str(&self.first),
        }
    }
}

/// The two phrase words with the highest tf-idf summed over the cluster's
/// members. Ties go to the lexicographically smaller word.
pub fn label_cluster(
    cluster: &Cluster,
    doc_vectors: &BTreeMap<String, TermVector>,
) -> Result<ClusterLabel> {
    let candidates: BTreeSet<&str> = cluster
        .bases
        .iter()
        .flat_map(|b| b.phrase.terms().iter().map(String::as_str))
        .collect();
    if cluster.members.is_empty() || candidates.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "cluster `{}` is empty",
            cluster.cluster_id
        )));
    }
    let mut scored: Vec<(&str, f64)> = candidates
        .into_iter()
        .map(|w| {
            let total = cluster
                .members
                .iter()
                .filter_map(|m| doc_vectors.get(m))
                .map(|v| v.get(w))
                .sum();
            (w, total)
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    Ok(ClusterLabel {
        first: scored[0].0.to_string(),
        second: scored.get(1).map(|(w, _)| w.to_string()),
    })
}

/// Cosine of each retrieved document against the centroid of the cluster's
/// members, rescaled to brightness over the retrieved set.
pub fn membership_scores(
    cluster: &Cluster,
    retrieved: &[String],
    doc_vectors: &BTreeMap<String, TermVector>,
) -> Result<LayerScores> {
    if cluster.members.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "cluster `{}` is empty",
            cluster.cluster_id
        )));
    }
    let vector = |id: &str| {
        doc_vectors
            .get(id)
            .ok_or_else(|| Error::InvalidArgument(format!("no vector for document `{id}`")))
    };
    let members = cluster
        .members
        .iter()
        .map(|m| vector(m))
        .collect::<Result<Vec<_>>>()?;
    let centroid = TermVector::centroid(members);
    let raw = retrieved
        .iter()
        .map(|d| Ok((d.clone(), cosine_sim(vector(d)?, &centroid))))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let brightness = normalize_brightness(&raw)?;
    Ok(LayerScores { raw, brightness })
}

/// A cluster ready to become a map layer.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterView {
    pub cluster: Cluster,
    pub label: ClusterLabel,
    pub scores: LayerScores,
}

/// Clusters `docs` and returns at most `config.tabs` labelled, scored
/// clusters. Fewer than two documents yield no clusters.
pub fn cluster_documents(
    docs: &[Document],
    doc_vectors: &BTreeMap<String, TermVector>,
    analysis: &AnalysisConfig,
    config: &ClusterConfig,
) -> Result<Vec<ClusterView>> {
    config.validate()?;
    if docs.len() < 2 {
        return Ok(Vec::new());
    }
    let analyzed: Vec<AnalyzedDoc> = docs
        .iter()
        .map(|d| AnalyzedDoc::from_document(d, analysis))
        .collect();
    let bases = build_base_clusters(&analyzed, config.max_phrase_len)?;
    let clusters = merge_base_clusters(&bases, config.top_bases, config.merge_threshold)?;
    log::debug!(
        "{} base clusters merged into {} clusters",
        bases.len(),
        clusters.len()
    );
    let retrieved: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
    clusters
        .into_iter()
        .take(config.tabs)
        .map(|cluster| {
            let label = label_cluster(&cluster, doc_vectors)?;
            let scores = membership_scores(&cluster, &retrieved, doc_vectors)?;
            Ok(ClusterView {
                cluster,
                label,
                scores,
            })
        })
        .collect()
}
