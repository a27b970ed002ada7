//! Core analysis for a document-map presentation server.
//!
//! A retrieval engine's ranked list is re-indexed locally, scored against
//! sub-queries of the user's query, clustered by shared phrases, and laid
//! out on a fixed grid where every layer describes the same documents in
//! the same cells.

pub mod adapters;
pub mod analysis;
pub mod bundle;
pub mod cluster;
pub mod corpus;
pub mod error;
pub mod index;
pub mod layers;
pub mod pipeline;
pub mod result;

pub use adapters::{AdapterRegistry, EngineDescriptor, EngineKind, LocalAdapter, ReplayAdapter, RetrievalAdapter};
pub use analysis::{tokenize, AnalysisConfig};
pub use bundle::{GridSpec, MapBundle};
pub use cluster::ClusterConfig;
pub use corpus::{load_corpus, Document};
pub use error::{Error, Result};
pub use index::{build_index, cosine_sim, local_search, term_weight, InvertedIndex, TermVector};
pub use layers::{LayerKind, LayerSpec};
pub use pipeline::{analyze_result, PipelineConfig};
pub use result::{RankedEntry, RankedResult};
