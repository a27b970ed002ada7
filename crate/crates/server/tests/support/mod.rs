#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use docmap_core::{build_index, load_corpus, AdapterRegistry, LocalAdapter, PipelineConfig, ReplayAdapter};
use docmap_server::protocol::handle_line;
use docmap_server::PresentationService;
use serde_json::{json, Value};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Toy corpus behind `local`, the replay sample behind `replay`, plus any
/// extra replay engines.
pub fn toy_service(cap: usize, extra_replays: &[(&str, PathBuf)]) -> PresentationService {
    let pipeline = PipelineConfig::default();
    let corpus = load_corpus(&data_path("toy_corpus.jsonl")).unwrap();
    let index = build_index(&corpus, &pipeline.analysis).unwrap();
    let mut adapters = AdapterRegistry::new();
    adapters.register(Box::new(LocalAdapter::new("local", Arc::new(index)))).unwrap();
    adapters
        .register(Box::new(ReplayAdapter::new("replay", data_path("replay_sample.jsonl"))))
        .unwrap();
    for (id, path) in extra_replays {
        adapters.register(Box::new(ReplayAdapter::new(*id, path.clone()))).unwrap();
    }
    PresentationService::new(adapters, pipeline, cap)
}

/// Sends one request object through the line protocol and parses the reply.
pub fn call(service: &PresentationService, request: Value) -> Value {
    let (line, _) = handle_line(service, &request.to_string());
    assert!(!line.contains('\n'));
    serde_json::from_str(&line).unwrap()
}

pub fn body(response: Value) -> Value {
    assert_eq!(response["ok"], json!(true), "{response}");
    assert!(response.get("error").is_none());
    response["body"].clone()
}

pub fn error_code(response: &Value) -> &str {
    assert_eq!(response["ok"], json!(false), "{response}");
    assert!(response.get("body").is_none());
    assert!(response["error"]["msg"].is_string());
    response["error"]["code"].as_str().unwrap()
}

pub fn open(service: &PresentationService) -> String {
    body(call(service, json!({"op": "open_session"})))["session"]
        .as_str()
        .unwrap()
        .to_string()
}

pub fn search(service: &PresentationService, session: &str, engine: &str, query: &str) -> Value {
    call(service, json!({"op": "search", "session": session, "engine": engine, "query": query}))
}

pub fn doc_ids(bundle: &Value) -> Vec<String> {
    bundle["documents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["id"].as_str().unwrap().to_string())
        .collect()
}

pub fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}
