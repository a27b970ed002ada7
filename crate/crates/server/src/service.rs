//! The presentation service: routes queries to engines, runs the analysis
//! pipeline and keeps per-session map state.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use docmap_core::pipeline::query_terms;
use docmap_core::{analyze_result, AdapterRegistry, Document, EngineDescriptor, MapBundle, PipelineConfig};
use docmap_eval::Run;

use crate::error::{Result, ServiceError};
use crate::session::{Session, SessionGuard, SessionSlot};

pub const DEFAULT_SESSION_CAP: usize = 64;

/// The exported ranking of one session.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Export {
    pub query: String,
    pub documents: Vec<String>,
    /// `query_id rank doc_id score` lines.
    pub run: String,
}

pub struct PresentationService {
    adapters: AdapterRegistry,
    pipeline: PipelineConfig,
    session_cap: usize,
    sessions: Mutex<HashMap<String, Arc<SessionSlot>>>,
}

impl PresentationService {
    pub fn new(adapters: AdapterRegistry, pipeline: PipelineConfig, session_cap: usize) -> Self {
        Self {
            adapters,
            pipeline,
            session_cap: session_cap.max(1),
            sessions: Mutex::new(HashMap::new()),
        }
    }

    pub fn pipeline(&self) -> &PipelineConfig {
        &self.pipeline
    }

    pub fn list_engines(&self) -> Vec<EngineDescriptor> {
        self.adapters.list_engines()
    }

    pub fn active_sessions(&self) -> usize {
        self.lock_sessions().len()
    }

    fn lock_sessions(&self) -> std::sync::MutexGuard<'_, HashMap<String, Arc<SessionSlot>>> {
        self.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Looks up a session and queues behind its earlier requests.
    fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut SessionGuard<'_>) -> Result<T>) -> Result<T> {
        let (slot, ticket) = {
            let sessions = self.lock_sessions();
            let slot = sessions
                .get(id)
                .cloned()
                .ok_or_else(|| ServiceError::NoSuchSession(id.to_string()))?;
            let ticket = slot.ticket();
            (slot, ticket)
        };
        let mut guard = slot.enter(ticket);
        if guard.is_closed() {
            return Err(ServiceError::NoSuchSession(id.to_string()));
        }
        f(&mut guard)
    }

    pub fn open_session(&self) -> Result<String> {
        let mut sessions = self.lock_sessions();
        if sessions.len() >= self.session_cap {
            return Err(ServiceError::ServerBusy(self.session_cap));
        }
        let id = uuid::Uuid::new_v4().simple().to_string();
        sessions.insert(id.clone(), Arc::new(SessionSlot::new(Session::new(id.clone()))));
        log::info!("session {id} opened ({} active)", sessions.len());
        Ok(id)
    }

    pub fn close_session(&self, id: &str) -> Result<()> {
        self.with_session(id, |s| {
            s.close();
            Ok(())
        })?;
        self.lock_sessions().remove(id);
        log::info!("session {id} closed");
        Ok(())
    }

    /// Runs `query` on `engine_id`, analyzes the top `rows * cols` results
    /// and makes the new bundle the session's current one.
    pub fn handle_search(&self, id: &str, engine_id: &str, query: &str) -> Result<MapBundle> {
        self.with_session(id, |session| {
            if self.adapters.get(engine_id).is_none() {
                return Err(ServiceError::NoSuchEngine(engine_id.to_string()));
            }
            query_terms(query, &self.pipeline.analysis).map_err(|_| ServiceError::EmptyQuery)?;
            let ranked = self
                .adapters
                .execute_query(engine_id, query, self.pipeline.grid.capacity())
                .map_err(|e| ServiceError::from_search(engine_id, e))?;
            let bundle = analyze_result(&ranked, query, &self.pipeline)
                .map_err(|e| ServiceError::from_search(engine_id, e))?;
            log::debug!(
                "session {id}: `{query}` on {engine_id} -> {} documents, {} layers",
                bundle.documents.len(),
                bundle.layers.len()
            );
            let documents: Vec<Document> = ranked.documents().cloned().collect();
            session.install(engine_id, query, bundle.clone(), documents);
            Ok(bundle)
        })
    }

    pub fn get_document(&self, id: &str, doc_id: &str) -> Result<Document> {
        self.with_session(id, |s| s.examine(doc_id))
    }

    pub fn toggle_press(&self, id: &str, doc_id: &str) -> Result<Vec<String>> {
        self.with_session(id, |s| s.toggle_press(doc_id).map(<[String]>::to_vec))
    }

    /// Pressed documents in selection order followed by the rest in rank
    /// order, also rendered as a run file under `query_id`.
    pub fn export_session(&self, id: &str, query_id: Option<&str>) -> Result<Export> {
        self.with_session(id, |s| {
            let documents = s.export_order()?;
            let query = s.search().map(|x| x.query.clone()).unwrap_or_default();
            let query_id = match query_id {
                Some(q) if !q.is_empty() && !q.contains(char::is_whitespace) => q.to_string(),
                Some(q) => {
                    return Err(ServiceError::BadRequest(format!(
                        "query id `{q}` must be one non-empty word"
                    )))
                }
                None => default_query_id(&query),
            };
            let mut run = Run::new();
            run.insert_ids(query_id, documents.clone())
                .map_err(|e| ServiceError::Internal(e.to_string()))?;
            Ok(Export {
                query,
                documents,
                run: run.to_text(),
            })
        })
    }

    /// Current press and examined state, for inspection.
    pub fn marks(&self, id: &str) -> Result<(Vec<String>, Vec<String>)> {
        self.with_session(id, |s| {
            Ok((s.pressed().to_vec(), s.examined().iter().cloned().collect()))
        })
    }
}

fn default_query_id(query: &str) -> String {
    let words: Vec<&str> = query.split_whitespace().collect();
    if words.is_empty() {
        "query".to_string()
    } else {
        words.join("_")
    }
}
