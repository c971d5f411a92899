//! JSON game service over an in-memory session store.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;

use bispan::catalog;
use bispan::format::parse_edge_list;
use bispan::game::{new_game, GameError, GameState, GameView, Policy};
use bispan::{find_two_trees, TreePair};

type Slot = Arc<tokio::sync::Mutex<GameState>>;

/// Live games by id. Each game sits behind its own lock, so moves on one
/// session are serialized while different sessions proceed independently.
pub struct SessionStore {
    games: Mutex<HashMap<String, Slot>>,
    rng: Mutex<StdRng>,
    default_seed: u64,
}

impl SessionStore {
    pub fn new(seed: Option<u64>) -> SessionStore {
        let rng = match seed {
            Some(s) => StdRng::seed_from_u64(s),
            None => StdRng::from_entropy(),
        };
        SessionStore { games: Mutex::new(HashMap::new()), rng: Mutex::new(rng), default_seed: seed.unwrap_or(0) }
    }

    /// Seed taken from `BISPAN_SEED` when set.
    pub fn from_env() -> SessionStore {
        SessionStore::new(std::env::var("BISPAN_SEED").ok().and_then(|s| s.parse().ok()))
    }

    fn insert(&self, game: GameState) -> String {
        let id = hex::encode(self.rng.lock().unwrap().gen::<[u8; 16]>());
        self.games.lock().unwrap().insert(id.clone(), Arc::new(tokio::sync::Mutex::new(game)));
        id
    }

    fn get(&self, id: &str) -> Option<Slot> {
        self.games.lock().unwrap().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.games.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub enum ApiError {
    NotFound(String),
    Conflict(String),
    Unprocessable(String),
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::WrongPhase(_) | GameError::EmptyHistory => ApiError::Conflict(e.to_string()),
            GameError::NotBispanning | GameError::UnknownEdge(_) | GameError::IllegalFix(_) => {
                ApiError::Unprocessable(e.to_string())
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, msg) = match self {
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, m),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, m),
            ApiError::Unprocessable(m) => (StatusCode::UNPROCESSABLE_ENTITY, m),
        };
        (code, Json(json!({ "error": msg }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyName {
    #[default]
    Adversarial,
    Random,
    Manual,
}

#[derive(Debug, Deserialize)]
pub struct NewGame {
    /// Edge-list text; its colors pick the start pair when they form one.
    pub graph: Option<String>,
    pub named: Option<String>,
    #[serde(default)]
    pub policy: PolicyName,
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub state: GameView,
}

#[derive(Debug, Deserialize)]
pub struct EdgeBody {
    pub edge: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AutoReply {
    pub edge: usize,
    pub state: GameView,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Hint {
    pub edge: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NamedEntry {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub difficult: bool,
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/game", post(create))
        .route("/game/{id}", get(show))
        .route("/game/{id}/flip", post(flip))
        .route("/game/{id}/fix", post(fix))
        .route("/game/{id}/auto", post(auto))
        .route("/game/{id}/undo", post(undo))
        .route("/game/{id}/hint", get(hint))
        .route("/graphs/named", get(named))
        .with_state(store)
}

fn start_pair(body: &NewGame) -> Result<(bispan::MultiGraph, TreePair), ApiError> {
    let bad = |m: String| ApiError::Unprocessable(m);
    match (&body.graph, &body.named) {
        (Some(text), None) => {
            let list = parse_edge_list(text).map_err(|e| bad(e.to_string()))?;
            let tp = TreePair::from_coloring(&list.graph, &list.colors)
                .ok()
                .or_else(|| find_two_trees(&list.graph, &list.colors))
                .ok_or_else(|| bad(GameError::NotBispanning.to_string()))?;
            Ok((list.graph, tp))
        }
        (None, Some(name)) => catalog::named_graph(name).map_err(|e| bad(e.to_string())),
        _ => Err(bad("give exactly one of `graph` or `named`".into())),
    }
}

async fn create(State(store): State<Arc<SessionStore>>, Json(body): Json<NewGame>) -> ApiResult<Created> {
    let (g, tp) = start_pair(&body)?;
    let policy = match body.policy {
        PolicyName::Adversarial => Policy::Adversarial,
        PolicyName::Manual => Policy::Manual,
        PolicyName::Random => Policy::Random { seed: body.seed.unwrap_or(store.default_seed) },
    };
    let game = new_game(&g, tp, policy)?;
    let state = game.view();
    let id = store.insert(game);
    Ok(Json(Created { id, state }))
}

async fn slot(store: &SessionStore, id: &str) -> Result<Slot, ApiError> {
    store.get(id).ok_or_else(|| ApiError::NotFound(format!("no game {id}")))
}

/// Apply a move under the session lock and store the successor.
async fn step(
    store: &SessionStore,
    id: &str,
    mv: impl FnOnce(&GameState) -> Result<GameState, GameError>,
) -> ApiResult<GameView> {
    let slot = slot(store, id).await?;
    let mut game = slot.lock().await;
    let next = mv(&game)?;
    *game = next;
    Ok(Json(game.view()))
}

async fn show(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<GameView> {
    let slot = slot(&store, &id).await?;
    let game = slot.lock().await;
    Ok(Json(game.view()))
}

async fn flip(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Json(body): Json<EdgeBody>,
) -> ApiResult<GameView> {
    step(&store, &id, |g| g.alice_flip(body.edge)).await
}

async fn fix(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Json(body): Json<EdgeBody>,
) -> ApiResult<GameView> {
    step(&store, &id, |g| g.bob_fix(body.edge)).await
}

async fn auto(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<AutoReply> {
    let slot = slot(&store, &id).await?;
    let mut game = slot.lock().await;
    let (edge, next) = game.bob_auto()?;
    *game = next;
    Ok(Json(AutoReply { edge, state: game.view() }))
}

async fn undo(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<GameView> {
    step(&store, &id, GameState::undo).await
}

async fn hint(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Hint> {
    let slot = slot(&store, &id).await?;
    let game = slot.lock().await.clone();
    // The search can take a while on larger graphs; keep it off the async workers.
    let edge = tokio::task::spawn_blocking(move || game.hint()).await.map_err(|e| ApiError::Conflict(e.to_string()))?;
    Ok(Json(Hint { edge }))
}

async fn named() -> Json<Vec<NamedEntry>> {
    let difficult = catalog::difficult_names();
    Json(
        catalog::names()
            .into_iter()
            .map(|name| {
                let (g, _) = catalog::named_graph(name).expect("catalog names resolve");
                NamedEntry { name: name.to_string(), n: g.n(), m: g.m(), difficult: difficult.contains(&name) }
            })
            .collect(),
    )
}

pub async fn serve(port: u16, store: Arc<SessionStore>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
