//! Query-derived map layers: the full query vector, the conjunction of all
//! terms, and one layer per term.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{cosine_sim, TermVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Vector,
    Conjunction,
    Term,
    Cluster,
}

impl LayerKind {
    pub fn is_query(self) -> bool {
        self != LayerKind::Cluster
    }
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LayerKind::Vector => "vector",
            LayerKind::Conjunction => "conjunction",
            LayerKind::Term => "term",
            LayerKind::Cluster => "cluster",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerSpec {
    pub layer_id: String,
    pub kind: LayerKind,
    pub label: String,
    /// Empty for cluster layers.
    pub terms: Vec<String>,
}

impl LayerSpec {
    pub fn vector(terms: &[String]) -> Self {
        Self {
            layer_id: "vector".into(),
            kind: LayerKind::Vector,
            label: terms.join(" "),
            terms: terms.to_vec(),
        }
    }

    pub fn conjunction(terms: &[String]) -> Self {
        Self {
            layer_id: "and".into(),
            kind: LayerKind::Conjunction,
            label: terms.join(" AND "),
            terms: terms.to_vec(),
        }
    }

    pub fn term(term: &str) -> Self {
        Self {
            layer_id: format!("term:{term}"),
            kind: LayerKind::Term,
            label: term.to_string(),
            terms: vec![term.to_string()],
        }
    }

    pub fn cluster(cluster_id: &str, label: String) -> Self {
        Self {
            layer_id: format!("cluster:{cluster_id}"),
            kind: LayerKind::Cluster,
            label,
            terms: Vec::new(),
        }
    }
}

/// Raw per-document scores for one layer and their brightness rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerScores {
    pub raw: BTreeMap<String, f64>,
    pub brightness: BTreeMap<String, f64>,
}

impl LayerScores {
    pub fn from_raw(raw: BTreeMap<String, f64>) -> Result<Self> {
        let brightness = normalize_brightness(&raw)?;
        Ok(Self { raw, brightness })
    }
}

/// Removes repeated terms, keeping first occurrences in order.
pub fn distinct_terms(terms: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(terms.len());
    for t in terms {
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
    out
}

/// `[vector, conjunction, term...]` for two or more distinct terms and
/// `[vector, term]` for one.
pub fn generate_layers(query_terms: &[String]) -> Result<Vec<LayerSpec>> {
    let terms = distinct_terms(query_terms);
    match terms.len() {
        0 => Err(Error::EmptyQuery),
        1 => Ok(vec![LayerSpec::vector(&terms), LayerSpec::term(&terms[0])]),
        _ => {
            let mut layers = vec![LayerSpec::vector(&terms), LayerSpec::conjunction(&terms)];
            layers.extend(terms.iter().map(|t| LayerSpec::term(t)));
            Ok(layers)
        }
    }
}

/// How strongly `doc_vector` supports `layer`.
///
/// A conjunction scores the weakest of its terms, so a document missing any
/// one of them scores 0.
pub fn layer_raw_score(
    layer: &LayerSpec,
    doc_vector: &TermVector,
    query_vector: &TermVector,
) -> Result<f64> {
    match layer.kind {
        LayerKind::Vector => Ok(cosine_sim(query_vector, doc_vector)),
        LayerKind::Term => match layer.terms.as_slice() {
            [t] => Ok(doc_vector.get(t)),
            _ => Err(Error::InvalidLayer(format!(
                "term layer `{}` must carry exactly one term",
                layer.layer_id
            ))),
        },
        LayerKind::Conjunction => {
            if layer.terms.len() < 2 {
                return Err(Error::InvalidLayer(format!(
                    "conjunction layer `{}` needs at least two terms",
                    layer.layer_id
                )));
            }
            Ok(layer
                .terms
                .iter()
                .map(|t| doc_vector.get(t))
                .fold(f64::INFINITY, f64::min))
        }
        LayerKind::Cluster => Err(Error::InvalidLayer(format!(
            "cluster layer `{}` has no query score",
            layer.layer_id
        ))),
    }
}

/// Min-max rescaling onto `[0, 1]`. A constant map becomes all 1.0.
pub fn normalize_brightness(raw: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>> {
    if raw.is_empty() {
        return Err(Error::InvalidArgument("cannot normalize an empty score map".into()));
    }
    let min = raw.values().copied().fold(f64::INFINITY, f64::min);
    let max = raw.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    Ok(raw
        .iter()
        .map(|(d, &r)| {
            let b = if span > 0.0 {
                ((r - min) / span).clamp(0.0, 1.0)
            } else {
                1.0
            };
            (d.clone(), b)
        })
        .collect())
}
