//! Command-line and file configuration.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use docmap_core::{
    build_index, load_corpus, AdapterRegistry, AnalysisConfig, ClusterConfig, GridSpec, LocalAdapter,
    PipelineConfig, ReplayAdapter,
};
use serde::Deserialize;

use crate::service::{PresentationService, DEFAULT_SESSION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

/// Document-map presentation server.
#[derive(Debug, Clone, Parser)]
#[command(name = "docmap-server", version)]
pub struct Args {
    #[arg(long, default_value_t = 7878)]
    pub port: u16,
    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// JSON-lines corpus served by the `local` engine.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// One stopword per line; a built-in English list is used otherwise.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long, default_value = "10x10")]
    pub grid: GridSpec,
    /// Number of cluster layers per map.
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long, value_enum, default_value = "off")]
    pub stemming: Switch,
    /// Most sessions open at once; at least 1.
    #[arg(long, default_value_t = DEFAULT_SESSION_CAP, value_parser = parse_cap)]
    pub session_cap: usize,
    /// `ENGINE_ID=PATH` replay engine; repeatable.
    #[arg(long = "replay", value_parser = parse_replay_arg)]
    pub replays: Vec<(String, PathBuf)>,
    /// TOML file with a `[cluster]` table (`max_phrase_len`, `top_bases`,
    /// `merge_threshold`, `tabs`).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("`{s}` is not a positive count")),
    }
}

fn parse_replay_arg(s: &str) -> Result<(String, PathBuf), String> {
    let (id, path) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}` is not ENGINE_ID=PATH"))?;
    if id.is_empty() || path.is_empty() {
        return Err(format!("`{s}` is not ENGINE_ID=PATH"));
    }
    Ok((id.to_string(), PathBuf::from(path)))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    cluster: ClusterConfig,
}

pub fn load_cluster_config(path: &Path) -> Result<ClusterConfig, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: FileConfig = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.cluster.validate()?;
    Ok(file.cluster)
}

/// Builds the service described by `args`: indexes the corpus, registers
/// engines, and applies analysis and cluster settings.
pub fn build_service(args: &Args) -> Result<PresentationService, Box<dyn std::error::Error>> {
    let stemming = args.stemming == Switch::On;
    let analysis = match &args.stopwords {
        Some(path) => AnalysisConfig::from_stopword_file(path, stemming)?,
        None => AnalysisConfig::default().with_stemming(stemming),
    };
    let mut cluster = match &args.config {
        Some(path) => load_cluster_config(path)?,
        None => ClusterConfig::default(),
    };
    if let Some(k) = args.clusters {
        cluster.tabs = k;
    }
    cluster.validate()?;

    let mut adapters = AdapterRegistry::new();
    if let Some(path) = &args.corpus {
        let corpus = load_corpus(path)?;
        let index = build_index(&corpus, &analysis)?;
        log::info!("indexed {} documents from {}", corpus.len(), path.display());
        adapters.register(Box::new(LocalAdapter::new("local", Arc::new(index))))?;
    }
    for (id, path) in &args.replays {
        adapters.register(Box::new(ReplayAdapter::new(id.clone(), path.clone())))?;
    }
    if adapters.list_engines().is_empty() {
        log::warn!("no engines configured; pass --corpus or --replay");
    }

    let pipeline = PipelineConfig {
        analysis,
        cluster,
        grid: args.grid,
    };
    Ok(PresentationService::new(adapters, pipeline, args.session_cap))
}
