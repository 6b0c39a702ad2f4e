//! Local HTTP/JSON API: human-vs-engine game sessions plus coloring and
//! P-position queries.

pub mod session;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chromatic_nim::engine::{MoveError, Reason, DEFAULT_MAX_HEIGHT};
use chromatic_nim::strategies::{pairs_first, pairs_upto};
use chromatic_nim::{Color, ColoringScheme, Error, Move, PPositionPair, Position, StrategyKind};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use session::{engine_move, fallback_move, hint, GameSession, Hint, Side};

/// Most heaps a session may have; the engine's brute-force fallback is
/// exponential in this.
pub const MAX_ARITY: usize = 6;
/// Largest `upto` or `count` accepted by the query endpoints.
pub const MAX_QUERY: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct Config {
    pub addr: SocketAddr,
    pub state_file: Option<PathBuf>,
    pub max_height: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            addr: SocketAddr::from(([127, 0, 0, 1], 8080)),
            state_file: None,
            max_height: DEFAULT_MAX_HEIGHT,
        }
    }
}

impl Config {
    /// Defaults overridden by `CHROMATIC_NIM_ADDR` and `CHROMATIC_NIM_STATE`.
    pub fn from_env() -> Result<Self, String> {
        let mut config = Config::default();
        if let Ok(addr) = std::env::var("CHROMATIC_NIM_ADDR") {
            config.addr = addr.parse().map_err(|e| format!("CHROMATIC_NIM_ADDR={addr}: {e}"))?;
        }
        if let Ok(path) = std::env::var("CHROMATIC_NIM_STATE") {
            config.state_file = Some(path.into());
        }
        Ok(config)
    }
}

/// All sessions behind one lock, so moves on a session are serialized.
#[derive(Debug)]
pub struct Store {
    sessions: Mutex<BTreeMap<String, GameSession>>,
    state_file: Option<PathBuf>,
    max_height: u64,
}

impl Store {
    /// Loads existing sessions from the state file if it exists.
    pub fn open(config: &Config) -> io::Result<Self> {
        let mut sessions = BTreeMap::new();
        if let Some(path) = config.state_file.as_ref().filter(|p| p.exists()) {
            let saved: Vec<GameSession> = serde_json::from_slice(&fs::read(path)?)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            sessions.extend(saved.into_iter().map(|s| (s.id.clone(), s)));
        }
        Ok(Self {
            sessions: Mutex::new(sessions),
            state_file: config.state_file.clone(),
            max_height: config.max_height,
        })
    }

    fn persist(&self, sessions: &BTreeMap<String, GameSession>) -> Result<(), ApiError> {
        let Some(path) = &self.state_file else {
            return Ok(());
        };
        let all: Vec<&GameSession> = sessions.values().collect();
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&all).expect("sessions serialize"))
            .and_then(|()| fs::rename(&tmp, path))
            .map_err(|e| ApiError::internal(format!("saving {}: {e}", path.display())))
    }

    pub fn create(&self, req: CreateGame) -> Result<GameSession, ApiError> {
        let start = Position::new(req.heaps);
        if start.arity() == 0 || start.arity() > MAX_ARITY {
            return Err(ApiError::bad_request(format!(
                "a game needs 1 to {MAX_ARITY} heaps, got {}",
                start.arity()
            )));
        }
        if start.max_height() > self.max_height {
            return Err(ApiError::bad_request(format!(
                "heap height {} exceeds the limit {}",
                start.max_height(),
                self.max_height
            )));
        }
        let mut sessions = self.sessions.lock().expect("store lock");
        let next = sessions
            .keys()
            .filter_map(|id| u64::from_str_radix(id, 16).ok())
            .max()
            .map_or(1, |n| n + 1);
        let session = GameSession::new(format!("{next:08x}"), req.scheme, start, req.starts);
        sessions.insert(session.id.clone(), session.clone());
        self.persist(&sessions)?;
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<GameSession, ApiError> {
        let sessions = self.sessions.lock().expect("store lock");
        sessions.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
    }

    pub fn play(&self, id: &str, req: MoveRequest) -> Result<GameSession, ApiError> {
        let mut sessions = self.sessions.lock().expect("store lock");
        let session = sessions.get_mut(id).ok_or_else(|| ApiError::not_found(id))?;
        if let Some(version) = req.version.filter(|&v| v != session.version) {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                "version_conflict",
                format!("session is at version {}, request was for {version}", session.version),
            ));
        }
        if session.finished {
            return Err(ApiError::from_move(MoveError::new(Reason::Finished, "the game is over")));
        }
        session.human_move(req.mv).map_err(ApiError::from_move)?;
        let updated = session.clone();
        self.persist(&sessions)?;
        Ok(updated)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CreateGame {
    pub scheme: ColoringScheme,
    pub heaps: Vec<u64>,
    #[serde(default = "human")]
    pub starts: Side,
}

fn human() -> Side {
    Side::Human
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: Move,
    /// Session version the move was chosen against.
    #[serde(default)]
    pub version: Option<u64>,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    reason: Option<Reason>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
            reason: None,
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", format!("no game with id {id:?}"))
    }

    fn internal(message: String) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }

    fn from_move(err: MoveError) -> Self {
        let status = match err.reason {
            Reason::Finished => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        Self {
            status,
            code: "illegal_move",
            message: err.message,
            reason: Some(err.reason),
        }
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        match err {
            Error::Resource(_) => Self::new(StatusCode::PAYLOAD_TOO_LARGE, "too_large", err.to_string()),
            _ => Self::bad_request(err.to_string()),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(err: JsonRejection) -> Self {
        Self::bad_request(err.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(err: QueryRejection) -> Self {
        Self::bad_request(err.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.code, "message": self.message });
        if let Some(reason) = self.reason {
            body["reason"] = json!(reason);
        }
        (self.status, Json(body)).into_response()
    }
}

type AppState = Arc<Store>;

async fn create_game(
    State(store): State<AppState>,
    body: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<GameSession>), ApiError> {
    let Json(req) = body?;
    Ok((StatusCode::CREATED, Json(store.create(req)?)))
}

async fn get_game(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<GameSession>, ApiError> {
    store.get(&id).map(Json)
}

async fn post_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<GameSession>, ApiError> {
    let Json(req) = body?;
    store.play(&id, req).map(Json)
}

async fn get_hint(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<Hint>, ApiError> {
    let session = store.get(&id)?;
    Ok(Json(hint(&session.scheme, &session.position)?))
}

#[derive(Debug, Deserialize)]
pub struct ColoringQuery {
    pub scheme: String,
    pub upto: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ColoringResponse {
    pub scheme_id: String,
    pub upto: u64,
    /// Colors of levels `1..=upto`.
    pub colors: Vec<Color>,
}

async fn get_coloring(
    query: Result<Query<ColoringQuery>, QueryRejection>,
) -> Result<Json<ColoringResponse>, ApiError> {
    let Query(q) = query?;
    if q.upto > MAX_QUERY {
        return Err(ApiError::bad_request(format!("upto must be at most {MAX_QUERY}")));
    }
    let scheme = ColoringScheme::from_json(&q.scheme)?;
    Ok(Json(ColoringResponse {
        scheme_id: scheme.id(),
        upto: q.upto,
        colors: scheme.colors_upto(q.upto)[1..].to_vec(),
    }))
}

#[derive(Debug, Deserialize)]
pub struct PPositionsQuery {
    pub scheme: String,
    pub strategy: Option<String>,
    pub count: Option<u64>,
    pub height: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PPositionsResponse {
    pub scheme_id: String,
    pub strategy: StrategyKind,
    pub pairs: Vec<PPositionPair>,
}

async fn get_ppositions(
    query: Result<Query<PPositionsQuery>, QueryRejection>,
) -> Result<Json<PPositionsResponse>, ApiError> {
    let Query(q) = query?;
    let scheme = ColoringScheme::from_json(&q.scheme)?;
    let strategy = match &q.strategy {
        Some(name) => name.parse()?,
        None => StrategyKind::default_for(&scheme),
    };
    let pairs = match (q.count, q.height) {
        (Some(n), None) if n <= MAX_QUERY => pairs_first(&scheme, strategy, n)?,
        (None, Some(h)) if h <= MAX_QUERY => pairs_upto(&scheme, strategy, h)?,
        (None, None) => pairs_first(&scheme, strategy, 10)?,
        _ => {
            return Err(ApiError::bad_request(format!(
                "give one of count or height, at most {MAX_QUERY}"
            )))
        }
    };
    Ok(Json(PPositionsResponse {
        scheme_id: scheme.id(),
        strategy,
        pairs,
    }))
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/hint", get(get_hint))
        .route("/coloring", get(get_coloring))
        .route("/ppositions", get(get_ppositions))
        .with_state(store)
}

/// Serves until the process is stopped.
pub async fn serve(config: Config) -> io::Result<()> {
    let store = Arc::new(Store::open(&config)?);
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
