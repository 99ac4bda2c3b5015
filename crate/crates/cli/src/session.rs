//! Persisted two-seat games.

use chrono::{DateTime, Utc};
use mum_core::{ConsolidationPolicy, MoveAction, Position, Variant};
use serde::{Deserialize, Serialize};

/// A seat at the table. `First` is the session creator and moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Seat {
    First,
    Second,
}

impl Seat {
    pub fn other(self) -> Seat {
        match self {
            Seat::First => Seat::Second,
            Seat::Second => Seat::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "camelCase")]
pub enum Controller {
    Human,
    #[default]
    Engine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seats {
    pub first: Controller,
    pub second: Controller,
}

impl Seats {
    pub fn controller(&self, seat: Seat) -> Controller {
        match seat {
            Seat::First => self.first,
            Seat::Second => self.second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "camelCase")]
pub enum Status {
    InProgress,
    Won { winner: Seat },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryEntry {
    pub player: Seat,
    #[serde(rename = "move")]
    pub mv: MoveAction,
    pub heaps: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSession {
    pub id: String,
    pub variant: Variant,
    pub initial_heaps: Vec<u64>,
    pub heaps: Vec<u64>,
    pub history: Vec<HistoryEntry>,
    pub player_to_move: Seat,
    pub seats: Seats,
    pub status: Status,
    pub policy: ConsolidationPolicy,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SessionError {
    #[error("game is over")]
    Finished,
    #[error("it is not {0:?}'s turn")]
    NotYourTurn(Seat),
    #[error(transparent)]
    Core(#[from] mum_core::Error),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("move {index} could not be replayed: {source}")]
    Illegal { index: usize, source: mum_core::Error },
    #[error("move {index} snapshot {recorded:?} differs from replayed {replayed:?}")]
    SnapshotMismatch {
        index: usize,
        recorded: Vec<u64>,
        replayed: Vec<u64>,
    },
    #[error("history alternates seats incorrectly at move {0}")]
    TurnOrder(usize),
    #[error("stored state disagrees with the replayed history")]
    FinalState,
    #[error(transparent)]
    Core(#[from] mum_core::Error),
}

impl GameSession {
    pub fn new(
        id: String,
        position: &Position,
        opponent: Controller,
        policy: ConsolidationPolicy,
        now: DateTime<Utc>,
    ) -> Self {
        let heaps = position.heaps().to_vec();
        let mut s = GameSession {
            id,
            variant: position.variant(),
            initial_heaps: heaps.clone(),
            heaps,
            history: Vec::new(),
            player_to_move: Seat::First,
            seats: Seats {
                first: Controller::Human,
                second: opponent,
            },
            status: Status::InProgress,
            policy,
            created_at: now,
            updated_at: now,
        };
        s.status = s.status_for(position);
        s
    }

    pub fn position(&self) -> Position {
        self.variant
            .position(&self.heaps)
            .expect("session heaps are validated on every mutation")
    }

    /// Normal play: whoever cannot move has lost. Apart from modulus 2,
    /// where no move is ever legal, this means the position is terminal.
    fn status_for(&self, position: &Position) -> Status {
        if position.legal_moves(self.policy).is_empty() {
            Status::Won {
                winner: self.player_to_move.other(),
            }
        } else {
            Status::InProgress
        }
    }

    pub fn controller_to_move(&self) -> Controller {
        self.seats.controller(self.player_to_move)
    }

    /// Applies `mv` for `seat`. Nothing changes on error.
    pub fn play(&mut self, seat: Seat, mv: MoveAction, now: DateTime<Utc>) -> Result<(), SessionError> {
        if self.status != Status::InProgress {
            return Err(SessionError::Finished);
        }
        if seat != self.player_to_move {
            return Err(SessionError::NotYourTurn(seat));
        }
        let next = self.position().apply_move(mv, self.policy)?;
        self.heaps = next.heaps().to_vec();
        self.history.push(HistoryEntry {
            player: seat,
            mv,
            heaps: self.heaps.clone(),
        });
        self.player_to_move = seat.other();
        self.status = self.status_for(&next);
        self.updated_at = now;
        if cfg!(debug_assertions) {
            self.verify_replay().expect("history replay diverged");
        }
        Ok(())
    }

    /// Replays the history from the initial heaps and checks it reproduces
    /// every snapshot and the current state.
    pub fn verify_replay(&self) -> Result<(), ReplayError> {
        let mut pos = self.variant.position(&self.initial_heaps)?;
        let mut seat = Seat::First;
        for (index, entry) in self.history.iter().enumerate() {
            if entry.player != seat {
                return Err(ReplayError::TurnOrder(index));
            }
            pos = pos
                .apply_move(entry.mv, self.policy)
                .map_err(|source| ReplayError::Illegal { index, source })?;
            if pos.heaps() != entry.heaps {
                return Err(ReplayError::SnapshotMismatch {
                    index,
                    recorded: entry.heaps.clone(),
                    replayed: pos.heaps().to_vec(),
                });
            }
            seat = seat.other();
        }
        let expected_status = if pos.legal_moves(self.policy).is_empty() {
            Status::Won { winner: seat.other() }
        } else {
            Status::InProgress
        };
        if pos.heaps() != self.heaps || seat != self.player_to_move || expected_status != self.status {
            return Err(ReplayError::FinalState);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mum_core::{Modulus, NumPosition};

    fn session(heaps: &[u64]) -> GameSession {
        let pos = Position::Numeric(NumPosition::new(Modulus::new(5).unwrap(), heaps).unwrap());
        GameSession::new(
            "t".into(),
            &pos,
            Controller::Human,
            ConsolidationPolicy::StrandedOnly,
            Utc::now(),
        )
    }

    #[test]
    fn last_mover_wins() {
        let mut s = session(&[2]);
        s.play(Seat::First, MoveAction::Reduce { heap_index: 0, amount: 1 }, Utc::now())
            .unwrap();
        assert_eq!(s.status, Status::Won { winner: Seat::First });
        assert_eq!(
            s.play(Seat::Second, MoveAction::Reduce { heap_index: 0, amount: 1 }, Utc::now()),
            Err(SessionError::Finished)
        );
    }

    #[test]
    fn terminal_start_is_already_decided() {
        let s = session(&[1, 1]);
        assert_eq!(s.status, Status::Won { winner: Seat::Second });
    }

    #[test]
    fn modulus_two_has_no_moves() {
        let pos = Position::Numeric(NumPosition::new(Modulus::new(2).unwrap(), &[3, 5]).unwrap());
        let s = GameSession::new("t".into(), &pos, Controller::Engine, ConsolidationPolicy::Always, Utc::now());
        assert_eq!(s.status, Status::Won { winner: Seat::Second });
        s.verify_replay().unwrap();
    }

    #[test]
    fn turn_order_enforced() {
        let mut s = session(&[6, 6, 6]);
        let before = s.clone();
        assert_eq!(
            s.play(Seat::Second, MoveAction::Reduce { heap_index: 0, amount: 2 }, Utc::now()),
            Err(SessionError::NotYourTurn(Seat::Second))
        );
        assert!(s
            .play(Seat::First, MoveAction::Reduce { heap_index: 0, amount: 7 }, Utc::now())
            .is_err());
        assert_eq!(s, before);
    }

    #[test]
    fn tampered_history_is_detected() {
        let mut s = session(&[6, 6, 6]);
        s.play(Seat::First, MoveAction::Reduce { heap_index: 2, amount: 4 }, Utc::now())
            .unwrap();
        s.verify_replay().unwrap();
        s.history[0].heaps = vec![6, 6, 6];
        assert!(matches!(
            s.verify_replay(),
            Err(ReplayError::SnapshotMismatch { index: 0, .. })
        ));
    }
}
