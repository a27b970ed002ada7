//! The analysis step between an engine's result and the client: re-index the
//! retrieved set, score query layers, cluster, and assemble the bundle.

use std::collections::BTreeMap;

use crate::analysis::{tokenize, AnalysisConfig};
use crate::bundle::{build_bundle, GridSpec, MapBundle, ScoredLayer};
use crate::cluster::{cluster_documents, ClusterConfig};
use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::index::build_index;
use crate::layers::{generate_layers, layer_raw_score, LayerScores, LayerSpec};
use crate::result::RankedResult;

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub analysis: AnalysisConfig,
    pub cluster: ClusterConfig,
    pub grid: GridSpec,
}

/// Analyzed query terms; fails when nothing survives analysis.
pub fn query_terms(query: &str, analysis: &AnalysisConfig) -> Result<Vec<String>> {
    let terms = tokenize(query, analysis);
    if terms.is_empty() {
        return Err(Error::EmptyQuery);
    }
    Ok(terms)
}

fn scores_or_empty(raw: BTreeMap<String, f64>) -> Result<LayerScores> {
    if raw.is_empty() {
        return Ok(LayerScores {
            raw,
            brightness: BTreeMap::new(),
        });
    }
    LayerScores::from_raw(raw)
}

/// Builds the map bundle for `ranked`, the engine's answer to `query`.
pub fn analyze_result(ranked: &RankedResult, query: &str, config: &PipelineConfig) -> Result<MapBundle> {
    let terms = query_terms(query, &config.analysis)?;
    let specs: Vec<LayerSpec> = generate_layers(&terms)?;

    let docs: Vec<Document> = ranked.documents().cloned().collect();
    let index = build_index(&docs, &config.analysis)?;
    let query_vector = index.query_vector(&terms);

    let query_layers = specs
        .into_iter()
        .map(|spec| {
            let raw = docs
                .iter()
                .map(|d| {
                    let v = index.doc_vector(&d.id).expect("every indexed doc has a vector");
                    Ok((d.id.clone(), layer_raw_score(&spec, v, &query_vector)?))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            Ok(ScoredLayer {
                scores: scores_or_empty(raw)?,
                members: None,
                spec,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let cluster_layers = cluster_documents(&docs, index.doc_vectors(), &config.analysis, &config.cluster)?
        .into_iter()
        .map(|view| ScoredLayer {
            spec: LayerSpec::cluster(&view.cluster.cluster_id, view.label.to_string()),
            scores: view.scores,
            members: Some(view.cluster.members),
        })
        .collect();

    build_bundle(ranked, query_layers, cluster_layers, &config.grid, query)
}
