//! JSON over HTTP for the session service.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::service::{ApiError, SessionService};

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        if status.is_server_error() {
            tracing::error!(error = %self, "request failed");
        }
        (status, Json(json!({ "error": self.code(), "message": self.to_string() }))).into_response()
    }
}

type Svc = Arc<SessionService>;

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| {
        if e.is_data() {
            ApiError::Unprocessable(e.to_string())
        } else {
            ApiError::BadRequest(e.to_string())
        }
    })
}

/// Runs a service call off the async workers; analysis can search for a while.
async fn run<T, F>(svc: Svc, f: F) -> Result<Json<T>, ApiError>
where
    T: Serialize + Send + 'static,
    F: FnOnce(&SessionService) -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(move || f(&svc))
        .await
        .expect("service call panicked")
        .map(Json)
}

async fn create(State(svc): State<Svc>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let req = parse(&body)?;
    let view = run(svc, move |s| s.create(req)).await?;
    Ok((StatusCode::CREATED, view))
}

async fn show(State(svc): State<Svc>, Path(id): Path<String>) -> impl IntoResponse {
    run(svc, move |s| s.get(&id)).await
}

async fn list_moves(State(svc): State<Svc>, Path(id): Path<String>) -> impl IntoResponse {
    run(svc, move |s| s.moves(&id)).await
}

async fn play(State(svc): State<Svc>, Path(id): Path<String>, body: Bytes) -> impl IntoResponse {
    let req = parse(&body)?;
    run(svc, move |s| s.play(&id, req)).await
}

async fn hint(State(svc): State<Svc>, Path(id): Path<String>) -> impl IntoResponse {
    run(svc, move |s| s.hint(&id)).await
}

async fn ai_move(State(svc): State<Svc>, Path(id): Path<String>) -> impl IntoResponse {
    run(svc, move |s| s.ai_move(&id)).await
}

async fn analysis(State(svc): State<Svc>, Path(id): Path<String>) -> impl IntoResponse {
    run(svc, move |s| s.analysis(&id)).await
}

pub fn router(svc: Arc<SessionService>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", get(list_moves).post(play))
        .route("/sessions/{id}/hint", get(hint))
        .route("/sessions/{id}/ai-move", post(ai_move))
        .route("/sessions/{id}/analysis", get(analysis))
        .with_state(svc)
}
