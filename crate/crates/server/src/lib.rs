//! Presentation server for document maps.
//!
//! Sits between clients and retrieval engines: forwards a session's query to
//! the chosen engine, turns the answer into a [`MapBundle`], and tracks
//! which documents the user pressed or read so the session can be exported
//! as a ranked run.
//!
//! [`MapBundle`]: docmap_core::MapBundle

pub mod config;
pub mod error;
pub mod protocol;
pub mod server;
pub mod service;
pub mod session;

pub use error::ServiceError;
pub use service::{Export, PresentationService};
