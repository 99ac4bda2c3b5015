use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use mum_cli::{http, SessionService};
use mum_core::{ConsolidationPolicy, Modulus, MoveAction, NumPosition};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app(dir: &std::path::Path) -> Router {
    http::router(Arc::new(SessionService::open(dir).unwrap()))
}

async fn send(app: &Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(|b| Body::from(b.to_string())).unwrap_or_default())
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn create(app: &Router, body: Value) -> (StatusCode, Value) {
    send(app, "POST", "/sessions", Some(&body.to_string())).await
}

fn numeric(m: u64, heaps: &[i64]) -> Value {
    json!({"variant": {"kind": "numeric", "modulus": m}, "heaps": heaps})
}

fn reduce(i: usize, r: u64) -> String {
    json!({"move": {"type": "reduce", "heapIndex": i, "amount": r}}).to_string()
}

#[tokio::test]
async fn create_reports_analysis_and_moves() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (status, s) = create(&app, numeric(15, &[16, 16, 16])).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(s["seats"], json!({"first": "human", "second": "engine"}));
    assert_eq!(s["policy"], "stranded-only");
    assert_eq!(s["status"], json!({"state": "inProgress"}));
    assert_eq!(s["analysis"]["product"], 1);
    assert_eq!(s["analysis"]["stranded"], false);
    assert_eq!(
        s["analysis"]["stateVector"],
        json!([{"modulus": 3, "value": 1}, {"modulus": 5, "value": 1}])
    );
    assert_eq!(s["analysis"]["mumber"], json!({"value": 1, "policy": "stranded-only"}));
    // 16 - 1 = 15 shares a factor with 15.
    assert_eq!(s["legalMoves"][0], json!({"type": "reduce", "heapIndex": 0, "amount": 2}));
    assert!(dir.path().join(format!("{}.json", s["id"].as_str().unwrap())).exists());
}

#[tokio::test]
async fn create_field_session() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let body = json!({
        "variant": {"kind": "poly", "field": {"p": 2, "n": 3, "irreducible": [1, 1, 0, 1]}},
        "heaps": [7, 6],
        "policy": "always"
    });
    let (status, s) = create(&app, body).await;
    assert_eq!(status, StatusCode::CREATED);
    let a = &s["analysis"];
    // (x^2+x)(x^2+x+1) = x^4 + x = x^2 in GF(8).
    assert_eq!(a["product"], 4);
    assert_eq!(a["productPolynomial"], "x^2");
    assert_eq!(a["outcome"], "N");
    assert!(a["mumber"].is_null() && a["stateVector"].is_null());
    let id = s["id"].as_str().unwrap();
    let (_, hint) = send(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(hint["explanation"]["kind"], "fieldInverse");
}

#[tokio::test]
async fn invalid_positions_are_unprocessable() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    for (body, code) in [
        (numeric(5, &[10]), "HeapNotCoprime"),
        (numeric(5, &[]), "EmptyHeaps"),
        (numeric(5, &[0, 2]), "NonPositiveHeap"),
        (numeric(1, &[2]), "InvalidRequest"),
        (
            json!({"variant": {"kind": "poly", "field": {"p": 2, "n": 3, "irreducible": [1, 1, 0, 1]}}, "heaps": [8]}),
            "NotCanonical",
        ),
        (
            json!({"variant": {"kind": "poly", "field": {"p": 2, "n": 2, "irreducible": [1, 0, 1]}}, "heaps": [1]}),
            "InvalidRequest",
        ),
    ] {
        let (status, err) = create(&app, body.clone()).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
        assert_eq!(err["error"], code, "{body}: {err}");
    }
    let (_, err) = create(&app, numeric(5, &[10])).await;
    assert_eq!(err["message"], "heap 10 not coprime to 5");
    let (status, _) = send(&app, "POST", "/sessions", Some("{not json")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn engine_replies_to_human_move() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (_, s) = create(&app, numeric(5, &[6, 6, 6])).await;
    let id = s["id"].as_str().unwrap();
    let (status, s) = send(&app, "POST", &format!("/sessions/{id}/moves"), Some(&reduce(2, 4))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["heaps"], json!([2, 3, 6]));
    assert_eq!(s["playerToMove"], "first");
    assert_eq!(s["history"][1]["player"], "second");
    assert_eq!(s["history"][1]["move"], json!({"type": "reduce", "heapIndex": 1, "amount": 3}));

    let (_, moves) = send(&app, "GET", &format!("/sessions/{id}/moves"), None).await;
    assert_eq!(moves["history"], s["history"]);
    assert_eq!(moves["legalMoves"], s["legalMoves"]);

    // The engine seat cannot be driven by a client.
    let as_engine = json!({"move": {"type": "reduce", "heapIndex": 0, "amount": 1}, "player": "second"});
    let (status, err) = send(&app, "POST", &format!("/sessions/{id}/moves"), Some(&as_engine.to_string())).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "NotYourTurn");
}

#[tokio::test]
async fn hints_follow_the_inverse_construction() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let hint_for = |heaps: &'static [i64]| {
        let app = app.clone();
        async move {
            let (_, s) = create(&app, numeric(5, heaps)).await;
            let id = s["id"].as_str().unwrap().to_string();
            send(&app, "GET", &format!("/sessions/{id}/hint"), None).await.1
        }
    };
    let h = hint_for(&[6, 6, 2]).await;
    assert_eq!(h["move"], json!({"type": "reduce", "heapIndex": 1, "amount": 3}));
    assert_eq!(h["explanation"]["kind"], "inverseConstruction");
    assert_eq!(h["explanation"]["coproduct"], 2);
    assert_eq!(h["explanation"]["inverse"], 3);

    let h = hint_for(&[6, 6, 6]).await;
    assert!(h["move"].is_null());
    assert!(h["explanation"]["text"]
        .as_str()
        .unwrap()
        .contains("every legal move leads to a winning position"));

    let h = hint_for(&[2, 2, 2]).await;
    assert_eq!(h["move"], json!({"type": "consolidateThenReduce", "amount": 2}));
    assert_eq!(h["explanation"]["kind"], "consolidation");
    assert_eq!(h["explanation"]["consolidated"], 8);
}

#[tokio::test]
async fn finishing_move_wins_and_closes_the_game() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (_, s) = create(&app, numeric(5, &[2])).await;
    let id = s["id"].as_str().unwrap();
    let uri = format!("/sessions/{id}/moves");
    let (status, err) = send(&app, "POST", &uri, Some(&reduce(0, 7))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(err["message"].as_str().unwrap().contains("r < 5 violated"), "{err}");

    let (status, s) = send(&app, "POST", &uri, Some(&reduce(0, 1))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["heaps"], json!([1]));
    assert_eq!(s["status"], json!({"state": "won", "winner": "first"}));
    assert_eq!(s["legalMoves"], json!([]));

    let (status, err) = send(&app, "POST", &uri, Some(&reduce(0, 1))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "GameOver");
    let (status, _) = send(&app, "POST", &format!("/sessions/{id}/ai-move"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn hot_seat_turns() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let mut body = numeric(7, &[9, 9]);
    body["opponent"] = json!("human");
    let (_, s) = create(&app, body).await;
    let id = s["id"].as_str().unwrap();
    let uri = format!("/sessions/{id}/moves");
    let wrong = json!({"move": {"type": "reduce", "heapIndex": 0, "amount": 1}, "player": "second"});
    let (status, _) = send(&app, "POST", &uri, Some(&wrong.to_string())).await;
    assert_eq!(status, StatusCode::CONFLICT);

    let (_, s) = send(&app, "POST", &uri, Some(&reduce(0, 1))).await;
    assert_eq!(s["playerToMove"], "second");
    assert_eq!(s["history"].as_array().unwrap().len(), 1);
    let (_, s) = send(&app, "POST", &format!("/sessions/{id}/ai-move"), None).await;
    assert_eq!(s["playerToMove"], "first");
    assert_eq!(s["history"][1]["player"], "second");
}

#[tokio::test]
async fn unknown_sessions_are_404() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    for (method, path) in [
        ("GET", ""),
        ("GET", "/moves"),
        ("POST", "/moves"),
        ("GET", "/hint"),
        ("POST", "/ai-move"),
        ("GET", "/analysis"),
    ] {
        let body = (method == "POST").then(|| reduce(0, 1));
        let (status, err) = send(&app, method, &format!("/sessions/nope{path}"), body.as_deref()).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{method} {path}");
        assert_eq!(err["error"], "NotFound");
    }
}

#[tokio::test]
async fn corrupt_documents_do_not_block_others() {
    let dir = tempfile::tempdir().unwrap();
    let good = {
        let app = app(dir.path());
        let (_, s) = create(&app, numeric(5, &[6, 6, 2])).await;
        s["id"].as_str().unwrap().to_string()
    };
    std::fs::write(dir.path().join("broken.json"), "{\"id\": ").unwrap();
    let svc = SessionService::open(dir.path()).unwrap();
    let bad: Vec<_> = svc.unloadable().collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].path.ends_with("broken.json"));
    let app = http::router(Arc::new(svc));
    let (status, _) = send(&app, "GET", &format!("/sessions/{good}"), None).await;
    assert_eq!(status, StatusCode::OK);
    let (status, err) = send(&app, "GET", "/sessions/broken", None).await;
    assert_eq!(status, StatusCode::INTERNAL_SERVER_ERROR);
    assert_eq!(err["error"], "Unloadable");
}

#[tokio::test]
async fn tampered_history_is_rejected_on_load() {
    let dir = tempfile::tempdir().unwrap();
    let id = {
        let app = app(dir.path());
        let (_, s) = create(&app, numeric(5, &[6, 6, 6])).await;
        let id = s["id"].as_str().unwrap().to_string();
        send(&app, "POST", &format!("/sessions/{id}/moves"), Some(&reduce(2, 4))).await;
        id
    };
    let path = dir.path().join(format!("{id}.json"));
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["heaps"] = json!([1, 1, 1]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let svc = SessionService::open(dir.path()).unwrap();
    assert_eq!(svc.unloadable().count(), 1);
    assert!(svc.session_ids().is_empty());
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    // Distinct sessions saved in parallel all survive a restart.
    let mut handles = Vec::new();
    for i in 0..16u64 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let (_, s) = create(&app, numeric(7, &[8 + 7 * i as i64, 9])).await;
            let id = s["id"].as_str().unwrap().to_string();
            send(&app, "POST", &format!("/sessions/{id}/ai-move"), None).await;
            id
        }));
    }
    let mut ids = Vec::new();
    for h in handles {
        ids.push(h.await.unwrap());
    }
    let reloaded = SessionService::open(dir.path()).unwrap();
    assert_eq!(reloaded.unloadable().count(), 0);
    for id in &ids {
        assert_eq!(reloaded.get(id).unwrap().session.history.len(), 2);
    }

    // Racing moves on one session apply one at a time.
    let mut body = numeric(7, &[50]);
    body["opponent"] = json!("human");
    let (_, s) = create(&app, body).await;
    let id = s["id"].as_str().unwrap().to_string();
    let mut handles = Vec::new();
    for _ in 0..8 {
        let app = app.clone();
        let id = id.clone();
        handles.push(tokio::spawn(async move {
            let mv = json!({"move": {"type": "reduce", "heapIndex": 0, "amount": 2}, "player": "first"});
            send(&app, "POST", &format!("/sessions/{id}/moves"), Some(&mv.to_string())).await.0
        }));
    }
    let mut codes = Vec::new();
    for h in handles {
        codes.push(h.await.unwrap());
    }
    assert_eq!(codes.iter().filter(|&&c| c == StatusCode::OK).count(), 1);
    assert!(codes.iter().all(|&c| c == StatusCode::OK || c == StatusCode::CONFLICT));
    let (_, s) = send(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(s["heaps"], json!([48]));
}

#[tokio::test]
async fn boundary_legality_matches_core() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let m = [3u64, 5, 7][rng.gen_range(0..3)];
        let heaps: Vec<i64> = (0..rng.gen_range(1..=3))
            .map(|_| loop {
                let h = rng.gen_range(1..=3 * m as i64);
                if !(h as u64).is_multiple_of(m) {
                    break h;
                }
            })
            .collect();
        let mut body = numeric(m, &heaps);
        body["opponent"] = json!("human");
        body["policy"] = json!(["stranded-only", "always"][rng.gen_range(0..2)]);
        let policy: ConsolidationPolicy = serde_json::from_value(body["policy"].clone()).unwrap();
        let (_, mut s) = create(&app, body).await;
        let id = s["id"].as_str().unwrap().to_string();
        for _ in 0..60 {
            if s["status"]["state"] != "inProgress" {
                break;
            }
            let current: Vec<u64> = serde_json::from_value(s["heaps"].clone()).unwrap();
            let pos = NumPosition::new(Modulus::new(m).unwrap(), &current).unwrap();
            let legal = pos.legal_moves(policy);
            let mv = if rng.gen_bool(0.5) {
                MoveAction::ConsolidateThenReduce { amount: rng.gen_range(0..m + 2) }
            } else {
                MoveAction::Reduce {
                    heap_index: rng.gen_range(0..current.len() + 1),
                    amount: rng.gen_range(0..m + 2),
                }
            };
            let body = json!({"move": mv}).to_string();
            let (status, next) = send(&app, "POST", &format!("/sessions/{id}/moves"), Some(&body)).await;
            if legal.contains(&mv) {
                assert_eq!(status, StatusCode::OK, "{mv:?} on {current:?}");
                s = next;
            } else {
                assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{mv:?} on {current:?}");
                let (_, same) = send(&app, "GET", &format!("/sessions/{id}"), None).await;
                assert_eq!(same["heaps"], s["heaps"]);
            }
        }
    }
}
