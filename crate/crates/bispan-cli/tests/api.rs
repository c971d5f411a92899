use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use bispan_cli::server::{router, SessionStore};

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn app() -> Router {
    router(Arc::new(SessionStore::new(Some(7))))
}

async fn start(app: &Router, body: Value) -> (String, Value) {
    let (code, v) = call(app, "POST", "/game", Some(body)).await;
    assert_eq!(code, StatusCode::OK, "{v}");
    (v["id"].as_str().unwrap().to_string(), v["state"].clone())
}

#[tokio::test]
async fn forced_round_on_k4() {
    let app = app();
    let (id, state) = start(&app, json!({ "named": "K4" })).await;
    assert_eq!(id.len(), 32);
    assert_eq!(state["phase"], "alice-turn");
    assert_eq!(state["edges"].as_array().unwrap().len(), 6);
    let (_, hint) = call(&app, "GET", &format!("/game/{id}/hint"), None).await;
    let e = hint["edge"].as_u64().unwrap();
    let (code, s) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": e }))).await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!(s["phase"], "bob-must-fix");
    assert_eq!(s["pending"]["forced"], true);
    let f = s["pending"]["candidates"][0].as_u64().unwrap();
    let (_, s) = call(&app, "POST", &format!("/game/{id}/fix"), Some(json!({ "edge": f }))).await;
    assert_eq!(s["phase"], "alice-turn");
    assert_eq!(s["history"], json!([[e, f]]));
    // The reported coloring is a valid pair on the same graph.
    let (_, got) = call(&app, "GET", &format!("/game/{id}"), None).await;
    assert_eq!(got, s);
    let blue: Vec<usize> = s["edges"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["color"] == "blue")
        .map(|x| x["id"].as_u64().unwrap() as usize)
        .collect();
    let (g, _) = bispan::catalog::named_graph("K4").unwrap();
    assert!(bispan::TreePair::from_ids(&g, &blue).is_ok());
}

#[tokio::test]
async fn replay_w5_figure_ends_won() {
    let app = app();
    let (id, _) = start(&app, json!({ "named": "W5 (uecbo figure)", "policy": "manual" })).await;
    let moves = [(0, 7), (1, 3), (2, 4), (6, 5)];
    let mut last = Value::Null;
    for (i, (e, f)) in moves.into_iter().enumerate() {
        let (code, s) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": e }))).await;
        assert_eq!(code, StatusCode::OK);
        assert_eq!(s["pending"]["candidates"], json!([f]), "round {i}");
        let (code, s) = call(&app, "POST", &format!("/game/{id}/fix"), Some(json!({ "edge": f }))).await;
        assert_eq!(code, StatusCode::OK);
        assert_eq!(s["won"], i == 3);
        last = s;
    }
    assert_eq!(last["phase"], "won");
    assert_eq!(last["target_distance"], 0);
    assert_eq!(last["history"].as_array().unwrap().len(), 4);
}

#[tokio::test]
async fn auto_takes_the_unique_candidate() {
    let app = app();
    let (id, _) = start(&app, json!({ "named": "W5 (uecbo figure)", "policy": "random", "seed": 3 })).await;
    let (_, s) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": 0 }))).await;
    assert_eq!(s["pending"]["forced"], true);
    let (code, r) = call(&app, "POST", &format!("/game/{id}/auto"), None).await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!(r["edge"], 7);
    assert_eq!(r["state"]["phase"], "alice-turn");
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (code, _) = call(&app, "GET", "/game/deadbeef", None).await;
    assert_eq!(code, StatusCode::NOT_FOUND);
    let (code, _) = call(&app, "POST", "/game/deadbeef/flip", Some(json!({ "edge": 0 }))).await;
    assert_eq!(code, StatusCode::NOT_FOUND);
    let (id, _) = start(&app, json!({ "named": "K4" })).await;
    let (code, _) = call(&app, "POST", &format!("/game/{id}/fix"), Some(json!({ "edge": 0 }))).await;
    assert_eq!(code, StatusCode::CONFLICT);
    let (code, _) = call(&app, "POST", &format!("/game/{id}/undo"), None).await;
    assert_eq!(code, StatusCode::CONFLICT);
    let (code, _) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": 99 }))).await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, s) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": 0 }))).await;
    let pending: Vec<u64> =
        s["pending"]["candidates"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let wrong = (0..6).find(|f| !pending.contains(f)).unwrap();
    let (code, _) = call(&app, "POST", &format!("/game/{id}/fix"), Some(json!({ "edge": wrong }))).await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
    let (code, _) = call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": 1 }))).await;
    assert_eq!(code, StatusCode::CONFLICT);
    let (code, _) = call(&app, "POST", "/game", Some(json!({ "graph": "3 3\n0 1\n1 2\n0 2\n" }))).await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
    let (code, _) = call(&app, "POST", "/game", Some(json!({ "named": "nothing" }))).await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn undo_and_custom_graph() {
    let app = app();
    let (id, first) = start(&app, json!({ "graph": "4 6\n0 1 b\n0 2 b\n0 3 b\n1 2 r\n1 3 r\n2 3 r\n" })).await;
    assert_eq!(first["edges"][0]["color"], "blue");
    call(&app, "POST", &format!("/game/{id}/flip"), Some(json!({ "edge": 0 }))).await;
    call(&app, "POST", &format!("/game/{id}/auto"), None).await;
    let (code, s) = call(&app, "POST", &format!("/game/{id}/undo"), None).await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!(s, first);
}

#[tokio::test]
async fn named_catalog_starts_games() {
    let app = app();
    let (code, list) = call(&app, "GET", "/graphs/named", None).await;
    assert_eq!(code, StatusCode::OK);
    let list = list.as_array().unwrap();
    let b71 = list.iter().find(|x| x["name"] == "B7,1").unwrap();
    assert_eq!((b71["n"].as_u64(), b71["difficult"].as_bool()), (Some(7), Some(true)));
    for entry in list {
        let (code, v) = call(&app, "POST", "/game", Some(json!({ "named": entry["name"] }))).await;
        assert_eq!(code, StatusCode::OK, "{}", entry["name"]);
        assert_eq!(v["state"]["n"], entry["n"]);
    }
}

#[tokio::test]
async fn seeded_store_gives_repeatable_ids() {
    let a = app();
    let b = app();
    let (x, _) = start(&a, json!({ "named": "K4" })).await;
    let (y, _) = start(&b, json!({ "named": "K4" })).await;
    let (z, _) = start(&a, json!({ "named": "K4" })).await;
    assert_eq!(x, y);
    assert_ne!(x, z);
}
