//! Grid placement and assembly of all layers into one [`MapBundle`].

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layers::{LayerKind, LayerScores, LayerSpec};
use crate::result::RankedResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { rows: 10, cols: 10 }
    }
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid {rows}x{cols} has no cells"
            )));
        }
        Ok(Self { rows, cols })
    }

    pub fn capacity(&self) -> usize {
        self.rows * self.cols
    }

    /// Row-major cell of a 1-based rank.
    pub fn cell_of_rank(&self, rank: usize) -> (usize, usize) {
        ((rank - 1) / self.cols, (rank - 1) % self.cols)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `RxC`, e.g. `10x10`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid `{s}` is not of the form RxC"));
        let (r, c) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        let rows = r.trim().parse().map_err(|_| bad())?;
        let cols = c.trim().parse().map_err(|_| bad())?;
        Self::new(rows, cols)
    }
}

/// Maps each rank to its cell. Fails if the result does not fit the grid.
pub fn assign_grid(ranked: &RankedResult, grid: &GridSpec) -> Result<BTreeMap<usize, (usize, usize)>> {
    if ranked.len() > grid.capacity() {
        return Err(Error::InvalidArgument(format!(
            "{} documents do not fit a {grid} grid",
            ranked.len()
        )));
    }
    Ok(ranked
        .entries()
        .iter()
        .map(|e| (e.original_rank, grid.cell_of_rank(e.original_rank)))
        .collect())
}

/// A layer with its scores, ready for assembly. Cluster layers also carry
/// their member set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredLayer {
    pub spec: LayerSpec,
    pub scores: LayerScores,
    pub members: Option<BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleDocument {
    pub id: String,
    pub title: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleLayer {
    pub id: String,
    pub kind: LayerKind,
    pub label: String,
    /// Degrees in `[0, 360)`.
    pub hue: f64,
    /// One value per document, in rank order.
    pub brightness: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

/// Everything a client needs to draw one search: geometry, titles in rank
/// order, and every layer's brightness in the same order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapBundle {
    pub grid: GridSpec,
    pub query: String,
    pub documents: Vec<BundleDocument>,
    pub layers: Vec<BundleLayer>,
}

impl MapBundle {
    pub fn contains(&self, doc_id: &str) -> bool {
        self.position(doc_id).is_some()
    }

    /// Array position (rank - 1) of a document.
    pub fn position(&self, doc_id: &str) -> Option<usize> {
        self.documents.iter().position(|d| d.id == doc_id)
    }

    pub fn document_at(&self, row: usize, col: usize) -> Option<&BundleDocument> {
        if col >= self.grid.cols {
            return None;
        }
        self.documents.get(row * self.grid.cols + col)
    }

    pub fn layer(&self, id: &str) -> Option<&BundleLayer> {
        self.layers.iter().find(|l| l.id == id)
    }
}

/// Assembles query layers (in the given order) followed by cluster layers
/// into a bundle. Hues are spaced evenly around the color wheel.
pub fn build_bundle(
    ranked: &RankedResult,
    query_layers: Vec<ScoredLayer>,
    cluster_layers: Vec<ScoredLayer>,
    grid: &GridSpec,
    query_echo: &str,
) -> Result<MapBundle> {
    assign_grid(ranked, grid)?;
    let ids: Vec<&str> = ranked.ids().collect();
    let id_set: BTreeSet<&str> = ids.iter().copied().collect();

    for layer in &query_layers {
        if !layer.spec.kind.is_query() {
            return Err(Error::InvalidLayer(format!(
                "`{}` is not a query layer",
                layer.spec.layer_id
            )));
        }
    }
    for layer in &cluster_layers {
        if layer.spec.kind != LayerKind::Cluster {
            return Err(Error::InvalidLayer(format!(
                "`{}` is not a cluster layer",
                layer.spec.layer_id
            )));
        }
    }

    let total = query_layers.len() + cluster_layers.len();
    let mut seen_ids = HashSet::new();
    let mut seen_labels = HashSet::new();
    let mut layers = Vec::with_capacity(total);
    for (i, layer) in query_layers.into_iter().chain(cluster_layers).enumerate() {
        let ScoredLayer { spec, scores, members } = layer;
        let inconsistent = |reason: String| Error::InconsistentLayer {
            layer: spec.layer_id.clone(),
            reason,
        };
        let domain: BTreeSet<&str> = scores.brightness.keys().map(String::as_str).collect();
        if domain != id_set {
            let missing = id_set.difference(&domain).next();
            let extra = domain.difference(&id_set).next();
            return Err(inconsistent(match (missing, extra) {
                (Some(m), _) => format!("no score for `{m}`"),
                (None, Some(x)) => format!("score for unknown document `{x}`"),
                (None, None) => unreachable!(),
            }));
        }
        if let Some(m) = members.iter().flatten().find(|m| !id_set.contains(m.as_str())) {
            return Err(inconsistent(format!("member `{m}` is not in the result")));
        }
        if !seen_ids.insert(spec.layer_id.clone()) {
            return Err(Error::InvalidLayer(format!(
                "layer id `{}` used twice",
                spec.layer_id
            )));
        }
        let mut label = spec.label.clone();
        let mut n = 2;
        while !seen_labels.insert(label.clone()) {
            label = format!("{} ({n})", spec.label);
            n += 1;
        }
        layers.push(BundleLayer {
            id: spec.layer_id,
            kind: spec.kind,
            label,
            hue: 360.0 * i as f64 / total as f64,
            brightness: ids.iter().map(|d| scores.brightness[*d]).collect(),
            members: members.map(|m| {
                ids.iter()
                    .filter(|d| m.contains(**d))
                    .map(|d| d.to_string())
                    .collect()
            }),
        });
    }

    Ok(MapBundle {
        grid: *grid,
        query: query_echo.to_string(),
        documents: ranked
            .entries()
            .iter()
            .map(|e| BundleDocument {
                id: e.document.id.clone(),
                title: e.document.title.clone(),
                rank: e.original_rank,
            })
            .collect(),
        layers,
    })
}
