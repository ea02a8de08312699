//! HTTP/JSON service over [`SessionStore`].

use std::sync::Arc;

use anyhow::Result;
use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use periodica_core::Error as CoreError;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::ops;
use crate::session::{DilogRequest, MutateRequest, NewSession, NotFound, PeriodRequest, SessionStore, TyRequest};

/// Structured error body: `{"error": {"kind": ..., "message": ...}}`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub kind: &'static str,
    pub message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        Self { status: StatusCode::BAD_REQUEST, kind: "invalid_input", message: message.into() }
    }
}

impl From<anyhow::Error> for ApiError {
    fn from(e: anyhow::Error) -> Self {
        let message = format!("{e:#}");
        if e.downcast_ref::<NotFound>().is_some() {
            return Self { status: StatusCode::NOT_FOUND, kind: "not_found", message };
        }
        let (status, kind) = match e.downcast_ref::<CoreError>() {
            Some(CoreError::NotSeedPeriod | CoreError::NotMatrixPeriod | CoreError::InsufficientWindow(_)) => {
                (StatusCode::CONFLICT, "precondition")
            }
            Some(CoreError::MixedSign { .. }) => (StatusCode::CONFLICT, "precondition"),
            Some(CoreError::SizeCapExceeded { .. } | CoreError::Overflow) => (StatusCode::UNPROCESSABLE_ENTITY, "limit"),
            Some(CoreError::InvariantViolation(_) | CoreError::InexactDivision(_)) => {
                (StatusCode::INTERNAL_SERVER_ERROR, "internal")
            }
            Some(CoreError::UnknownEntry(_)) => (StatusCode::NOT_FOUND, "not_found"),
            _ => (StatusCode::BAD_REQUEST, "invalid_input"),
        };
        Self { status, kind, message }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ops::canonical(&json!({ "error": { "kind": self.kind, "message": self.message } }));
        (self.status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
    }
}

fn respond<T: Serialize>(status: StatusCode, value: &T) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], ops::canonical(value)).into_response()
}

/// Parse a JSON body; an empty body counts as `{}`.
fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    let raw: &[u8] = if bytes.iter().all(u8::is_ascii_whitespace) { b"{}" } else { bytes };
    serde_json::from_slice(raw).map_err(|e| ApiError::bad_request(format!("malformed request body: {e}")))
}

type AppState = Arc<SessionStore>;

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, kind: "internal", message: e.to_string() })?
        .map_err(ApiError::from)
}

async fn create(State(store): State<AppState>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: NewSession = body(&bytes)?;
    let s = blocking(move || store.create(&req)).await?;
    Ok(respond(StatusCode::CREATED, &json!({ "id": s.id, "history": s.history, "seed": s.current })))
}

async fn show(State(store): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = blocking(move || store.load(&id)).await?;
    Ok(respond(StatusCode::OK, &s))
}

async fn mutate(State(store): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: MutateRequest = body(&bytes)?;
    let (s, deltas) = blocking(move || store.update(&id, |s| s.mutate(&req))).await?;
    Ok(respond(StatusCode::OK, &json!({ "id": s.id, "history": s.history, "seed": s.current, "deltas": deltas })))
}

async fn undo(State(store): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let (s, ()) = blocking(move || store.update(&id, |s| s.undo())).await?;
    Ok(respond(StatusCode::OK, &json!({ "id": s.id, "history": s.history, "seed": s.current })))
}

async fn check_period(State(store): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: PeriodRequest = body(&bytes)?;
    let (s, v) = blocking(move || store.update(&id, |s| s.check_period(&req))).await?;
    Ok(respond(StatusCode::OK, &json!({ "id": s.id, "history": s.history, "verdict": v })))
}

async fn ty(State(store): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: TyRequest = body(&bytes)?;
    let (s, sys) = blocking(move || store.update(&id, |s| s.ty(&req))).await?;
    Ok(respond(StatusCode::OK, &json!({ "id": s.id, "history": s.history, "system": sys })))
}

async fn dilog(State(store): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: DilogRequest = body(&bytes)?;
    let (s, d) = blocking(move || store.update(&id, |s| s.dilog(&req))).await?;
    Ok(respond(StatusCode::OK, &json!({ "id": s.id, "history": s.history, "report": d })))
}

async fn catalog() -> Response {
    respond(StatusCode::OK, &ops::catalog_list())
}

async fn catalog_entry(Path(name): Path<String>) -> Result<Response, ApiError> {
    Ok(respond(StatusCode::OK, &ops::catalog_show(&name)?))
}

pub fn router(store: SessionStore) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/check-period", post(check_period))
        .route("/sessions/{id}/ty", post(ty))
        .route("/sessions/{id}/dilog", post(dilog))
        .route("/catalog", get(catalog))
        .route("/catalog/{name}", get(catalog_entry))
        .with_state(Arc::new(store))
}

pub async fn serve(bind: &str, store: SessionStore) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(bind).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await?;
    Ok(())
}
