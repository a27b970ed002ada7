//! Per-session state and the ticket gate that serializes a session's
//! requests in arrival order.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Condvar, Mutex, MutexGuard};
use std::time::SystemTime;

use docmap_core::{Document, MapBundle};

use crate::error::{Result, ServiceError};

#[derive(Debug, Clone)]
pub struct SearchState {
    pub engine_id: String,
    pub query: String,
    pub bundle: MapBundle,
    documents: HashMap<String, Document>,
}

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub created_at: SystemTime,
    search: Option<SearchState>,
    /// Selection order.
    pressed: Vec<String>,
    examined: BTreeSet<String>,
    closed: bool,
}

impl Session {
    pub fn new(id: String) -> Self {
        Self {
            id,
            created_at: SystemTime::now(),
            search: None,
            pressed: Vec::new(),
            examined: BTreeSet::new(),
            closed: false,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub(crate) fn close(&mut self) {
        self.closed = true;
        self.search = None;
        self.pressed.clear();
        self.examined.clear();
    }

    pub fn search(&self) -> Option<&SearchState> {
        self.search.as_ref()
    }

    pub fn pressed(&self) -> &[String] {
        &self.pressed
    }

    pub fn examined(&self) -> &BTreeSet<String> {
        &self.examined
    }

    /// Replaces the current result. Press and examined state belong to the
    /// old grid and are dropped.
    pub fn install(&mut self, engine_id: &str, query: &str, bundle: MapBundle, documents: Vec<Document>) {
        self.search = Some(SearchState {
            engine_id: engine_id.to_string(),
            query: query.to_string(),
            bundle,
            documents: documents.into_iter().map(|d| (d.id.clone(), d)).collect(),
        });
        self.pressed.clear();
        self.examined.clear();
    }

    fn require_doc(&self, doc_id: &str) -> Result<&Document> {
        self.search
            .as_ref()
            .and_then(|s| s.documents.get(doc_id))
            .ok_or_else(|| ServiceError::NoSuchDocument(doc_id.to_string()))
    }

    /// Presses an unpressed document (appending it) or releases a pressed one.
    pub fn toggle_press(&mut self, doc_id: &str) -> Result<&[String]> {
        self.require_doc(doc_id)?;
        match self.pressed.iter().position(|d| d == doc_id) {
            Some(i) => {
                self.pressed.remove(i);
            }
            None => self.pressed.push(doc_id.to_string()),
        }
        Ok(&self.pressed)
    }

    /// Returns the full document and marks it examined.
    pub fn examine(&mut self, doc_id: &str) -> Result<Document> {
        let doc = self.require_doc(doc_id)?.clone();
        self.examined.insert(doc_id.to_string());
        Ok(doc)
    }

    /// Pressed documents in selection order, then the rest in original rank
    /// order.
    pub fn export_order(&self) -> Result<Vec<String>> {
        let search = self.search.as_ref().ok_or(ServiceError::NoSearchYet)?;
        let pressed: BTreeSet<&str> = self.pressed.iter().map(String::as_str).collect();
        let mut order = self.pressed.clone();
        order.extend(
            search
                .bundle
                .documents
                .iter()
                .filter(|d| !pressed.contains(d.id.as_str()))
                .map(|d| d.id.clone()),
        );
        Ok(order)
    }
}

/// A session plus a FIFO gate: each request takes a ticket on arrival and
/// waits until every earlier ticket has been served.
pub struct SessionSlot {
    turn: Mutex<Turn>,
    cv: Condvar,
    session: Mutex<Session>,
}

#[derive(Default)]
struct Turn {
    next: u64,
    serving: u64,
}

pub struct Ticket(u64);

impl SessionSlot {
    pub fn new(session: Session) -> Self {
        Self {
            turn: Mutex::new(Turn::default()),
            cv: Condvar::new(),
            session: Mutex::new(session),
        }
    }

    pub fn ticket(&self) -> Ticket {
        let mut turn = self.turn.lock().unwrap_or_else(|e| e.into_inner());
        let t = Ticket(turn.next);
        turn.next += 1;
        t
    }

    /// Blocks until `ticket` is next in line.
    pub fn enter(&self, ticket: Ticket) -> SessionGuard<'_> {
        let mut turn = self.turn.lock().unwrap_or_else(|e| e.into_inner());
        while turn.serving != ticket.0 {
            turn = self.cv.wait(turn).unwrap_or_else(|e| e.into_inner());
        }
        drop(turn);
        SessionGuard {
            slot: self,
            session: Some(self.session.lock().unwrap_or_else(|e| e.into_inner())),
        }
    }
}

pub struct SessionGuard<'a> {
    slot: &'a SessionSlot,
    session: Option<MutexGuard<'a, Session>>,
}

impl std::ops::Deref for SessionGuard<'_> {
    type Target = Session;
    fn deref(&self) -> &Session {
        self.session.as_ref().expect("held until drop")
    }
}

impl std::ops::DerefMut for SessionGuard<'_> {
    fn deref_mut(&mut self) -> &mut Session {
        self.session.as_mut().expect("held until drop")
    }
}

impl Drop for SessionGuard<'_> {
    fn drop(&mut self) {
        self.session.take();
        let mut turn = self.slot.turn.lock().unwrap_or_else(|e| e.into_inner());
        turn.serving += 1;
        drop(turn);
        self.slot.cv.notify_all();
    }
}
