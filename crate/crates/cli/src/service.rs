//! Session operations independent of the transport.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use chrono::Utc;
use mum_core::{
    AnalysisView, ConsolidationPolicy, Error, Hint, MoveAction, Variant,
};
use serde::{Deserialize, Serialize};

use crate::session::{Controller, GameSession, HistoryEntry, Seat, SessionError, Status};
use crate::store::{SessionStore, StoreError, Unloadable};

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateRequest {
    pub variant: Variant,
    pub heaps: Vec<i64>,
    #[serde(default)]
    pub opponent: Controller,
    #[serde(default)]
    pub policy: ConsolidationPolicy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: MoveAction,
    /// Defaults to the seat whose turn it is.
    #[serde(default)]
    pub player: Option<Seat>,
}

/// A session as returned to clients.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    #[serde(flatten)]
    pub session: GameSession,
    pub analysis: AnalysisView,
    pub legal_moves: Vec<MoveAction>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MovesView {
    pub player_to_move: Seat,
    pub legal_moves: Vec<MoveAction>,
    pub history: Vec<HistoryEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("no session {0}")]
    NotFound(String),
    #[error("session {id} could not be loaded: {reason}")]
    Unloadable { id: String, reason: String },
    #[error("it is not {0:?}'s turn")]
    NotYourTurn(Seat),
    #[error("game is over")]
    Finished,
    #[error("{0}")]
    Invalid(Error),
    #[error("malformed request: {0}")]
    BadRequest(String),
    #[error("invalid request: {0}")]
    Unprocessable(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Finished => ApiError::Finished,
            SessionError::NotYourTurn(s) => ApiError::NotYourTurn(s),
            SessionError::Core(e) => ApiError::Invalid(e),
        }
    }
}

impl ApiError {
    pub fn status(&self) -> u16 {
        match self {
            ApiError::NotFound(_) => 404,
            ApiError::NotYourTurn(_) | ApiError::Finished => 409,
            ApiError::Invalid(_) | ApiError::Unprocessable(_) => 422,
            ApiError::BadRequest(_) => 400,
            ApiError::Unloadable { .. } | ApiError::Store(_) => 500,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ApiError::NotFound(_) => "NotFound",
            ApiError::Unloadable { .. } => "Unloadable",
            ApiError::NotYourTurn(_) => "NotYourTurn",
            ApiError::Finished => "GameOver",
            ApiError::Invalid(e) => error_code(e),
            ApiError::BadRequest(_) => "BadRequest",
            ApiError::Unprocessable(_) => "InvalidRequest",
            ApiError::Store(_) => "StoreFailure",
        }
    }
}

/// Stable name of a core error, used as the `error` field of responses.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::InvalidModulus(_) => "InvalidModulus",
        Error::NotInvertible { .. } => "NotInvertible",
        Error::SetSaturated(_) => "SetSaturated",
        Error::LengthMismatch { .. } => "LengthMismatch",
        Error::EmptyHeaps => "EmptyHeaps",
        Error::NonPositiveHeap(_) => "NonPositiveHeap",
        Error::HeapNotCoprime { .. } => "HeapNotCoprime",
        Error::IllegalMove(_) => "IllegalMove",
        Error::ProductOverflow => "ProductOverflow",
        Error::HeapTooSmall { .. } => "HeapTooSmall",
        Error::ModulusMismatch { .. } => "ModulusMismatch",
        Error::FactorMismatch { .. } => "FactorMismatch",
        Error::NotPrime(_) => "NotPrime",
        Error::NotMonic => "NotMonic",
        Error::CoefficientOutOfRange { .. } => "CoefficientOutOfRange",
        Error::NotIrreducible => "NotIrreducible",
        Error::FieldTooLarge { .. } => "FieldTooLarge",
        Error::FieldMismatch => "FieldMismatch",
        Error::ZeroInverse => "ZeroInverse",
        Error::NotCanonical { .. } => "NotCanonical",
        Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
    }
}

type Shared = Arc<Mutex<GameSession>>;

pub struct SessionService {
    store: SessionStore,
    sessions: RwLock<HashMap<String, Shared>>,
    unloadable: HashMap<String, Unloadable>,
}

impl SessionService {
    /// Opens the store and loads every readable session.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let store = SessionStore::open(dir)?;
        let (loaded, failed) = store.load_all()?;
        for u in &failed {
            tracing::warn!(path = %u.path.display(), reason = %u.reason, "session unloadable");
        }
        let sessions = loaded
            .into_iter()
            .map(|s| (s.id.clone(), Arc::new(Mutex::new(s))))
            .collect();
        let unloadable = failed
            .into_iter()
            .filter_map(|u| {
                let id = u.path.file_stem()?.to_str()?.to_string();
                Some((id, u))
            })
            .collect();
        Ok(SessionService {
            store,
            sessions: RwLock::new(sessions),
            unloadable,
        })
    }

    pub fn unloadable(&self) -> impl Iterator<Item = &Unloadable> {
        self.unloadable.values()
    }

    pub fn session_ids(&self) -> Vec<String> {
        let mut ids: Vec<_> = self.sessions.read().unwrap().keys().cloned().collect();
        ids.sort();
        ids
    }

    fn get_shared(&self, id: &str) -> Result<Shared, ApiError> {
        if let Some(s) = self.sessions.read().unwrap().get(id) {
            return Ok(s.clone());
        }
        match self.unloadable.get(id) {
            Some(u) => Err(ApiError::Unloadable {
                id: id.to_string(),
                reason: u.reason.clone(),
            }),
            None => Err(ApiError::NotFound(id.to_string())),
        }
    }

    fn view(session: &GameSession) -> SessionView {
        let pos = session.position();
        SessionView {
            analysis: pos.analyze(session.policy),
            legal_moves: pos.legal_moves(session.policy),
            session: session.clone(),
        }
    }

    pub fn create(&self, req: CreateRequest) -> Result<SessionView, ApiError> {
        let pos = req.variant.position_signed(&req.heaps).map_err(ApiError::Invalid)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = GameSession::new(id.clone(), &pos, req.opponent, req.policy, Utc::now());
        self.store.save(&session)?;
        let view = Self::view(&session);
        self.sessions
            .write()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn get(&self, id: &str) -> Result<SessionView, ApiError> {
        let shared = self.get_shared(id)?;
        let s = shared.lock().unwrap();
        Ok(Self::view(&s))
    }

    pub fn moves(&self, id: &str) -> Result<MovesView, ApiError> {
        let shared = self.get_shared(id)?;
        let s = shared.lock().unwrap();
        Ok(MovesView {
            player_to_move: s.player_to_move,
            legal_moves: s.position().legal_moves(s.policy),
            history: s.history.clone(),
        })
    }

    pub fn hint(&self, id: &str) -> Result<Hint, ApiError> {
        let shared = self.get_shared(id)?;
        let s = shared.lock().unwrap();
        Ok(s.position().hint(s.policy))
    }

    pub fn analysis(&self, id: &str) -> Result<AnalysisView, ApiError> {
        let shared = self.get_shared(id)?;
        let s = shared.lock().unwrap();
        Ok(s.position().analyze(s.policy))
    }

    /// Plays a human move, then any engine replies.
    pub fn play(&self, id: &str, req: MoveRequest) -> Result<SessionView, ApiError> {
        self.mutate(id, |s| {
            let seat = req.player.unwrap_or(s.player_to_move);
            if s.status != Status::InProgress {
                return Err(ApiError::Finished);
            }
            if seat != s.player_to_move || s.seats.controller(seat) == Controller::Engine {
                return Err(ApiError::NotYourTurn(seat));
            }
            s.play(seat, req.mv, Utc::now())?;
            Ok(())
        })
    }

    /// Lets the engine choose the move for whoever is to move.
    pub fn ai_move(&self, id: &str) -> Result<SessionView, ApiError> {
        self.mutate(id, |s| {
            if s.status != Status::InProgress {
                return Err(ApiError::Finished);
            }
            engine_step(s)
        })
    }

    fn mutate(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> Result<(), ApiError>,
    ) -> Result<SessionView, ApiError> {
        let shared = self.get_shared(id)?;
        let mut s = shared.lock().unwrap();
        let before = s.clone();
        let result = f(&mut s).and_then(|()| {
            while s.status == Status::InProgress && s.controller_to_move() == Controller::Engine {
                engine_step(&mut s)?;
            }
            Ok(self.store.save(&s)?)
        });
        if let Err(e) = result {
            *s = before;
            return Err(e);
        }
        Ok(Self::view(&s))
    }
}

fn engine_step(s: &mut GameSession) -> Result<(), ApiError> {
    let mv = s
        .position()
        .engine_move(s.policy)
        .ok_or(ApiError::Finished)?;
    let seat = s.player_to_move;
    s.play(seat, mv, Utc::now())?;
    Ok(())
}
