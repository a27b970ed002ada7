//! Newline-delimited JSON request/response messages.
//!
//! Request: `{"op": ..., "session": ..., ...}`. Response:
//! `{"ok": true, "body": ...}` or
//! `{"ok": false, "error": {"code": ..., "msg": ...}}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Result, ServiceError};
use crate::service::PresentationService;

#[derive(Debug, Clone, Deserialize)]
pub struct Request {
    pub op: String,
    #[serde(default)]
    pub session: Option<String>,
    #[serde(default)]
    pub engine: Option<String>,
    #[serde(default)]
    pub query: Option<String>,
    #[serde(default)]
    pub doc: Option<String>,
    #[serde(default)]
    pub query_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

impl Response {
    pub fn success(body: Value) -> Self {
        Self {
            ok: true,
            body: Some(body),
            error: None,
        }
    }

    pub fn failure(err: &ServiceError) -> Self {
        Self {
            ok: false,
            body: None,
            error: Some(ErrorBody {
                code: err.code().to_string(),
                msg: err.to_string(),
            }),
        }
    }
}

fn field<'a>(value: &'a Option<String>, name: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| ServiceError::BadRequest(format!("missing field `{name}`")))
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| ServiceError::Internal(e.to_string()))
}

/// Executes one request. Returns the session opened by it, if any.
pub fn dispatch(service: &PresentationService, req: &Request) -> (Response, Option<String>) {
    let mut opened = None;
    let result = (|| -> Result<Value> {
        match req.op.as_str() {
            "open_session" => {
                let id = service.open_session()?;
                opened = Some(id.clone());
                Ok(json!({ "session": id }))
            }
            "list_engines" => Ok(json!({ "engines": to_value(&service.list_engines())? })),
            "search" => {
                let bundle = service.handle_search(
                    field(&req.session, "session")?,
                    field(&req.engine, "engine")?,
                    field(&req.query, "query")?,
                )?;
                to_value(&bundle)
            }
            "get_document" => {
                let doc = service.get_document(field(&req.session, "session")?, field(&req.doc, "doc")?)?;
                to_value(&doc)
            }
            "toggle_press" => {
                let pressed = service.toggle_press(field(&req.session, "session")?, field(&req.doc, "doc")?)?;
                Ok(json!({ "pressed": pressed }))
            }
            "export" => {
                let export = service.export_session(field(&req.session, "session")?, req.query_id.as_deref())?;
                to_value(&export)
            }
            "close" => {
                let id = field(&req.session, "session")?;
                service.close_session(id)?;
                Ok(json!({ "closed": id }))
            }
            other => Err(ServiceError::BadRequest(format!("unknown op `{other}`"))),
        }
    })();
    let response = match result {
        Ok(body) => Response::success(body),
        Err(e) => {
            log::debug!("{} failed: {e}", req.op);
            Response::failure(&e)
        }
    };
    (response, opened)
}

/// Parses and executes one request line, producing one response line
/// (without the trailing newline).
pub fn handle_line(service: &PresentationService, line: &str) -> (String, Option<String>) {
    let (response, opened) = match serde_json::from_str::<Request>(line) {
        Ok(req) => dispatch(service, &req),
        Err(e) => (
            Response::failure(&ServiceError::BadRequest(format!("malformed request: {e}"))),
            None,
        ),
    };
    let text = serde_json::to_string(&response).expect("responses always serialize");
    (text, opened)
}
