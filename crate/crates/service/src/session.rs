//! Game sessions and the engine opponent.

use chromatic_nim::engine::{apply_move, is_green_position, top_color, MoveError, Reason};
use chromatic_nim::strategies::winning_move;
use chromatic_nim::{Color, ColoringScheme, Move, Oracle, Position};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Human,
    Engine,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Human => Side::Engine,
            Side::Engine => Side::Human,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Side,
    #[serde(rename = "move")]
    pub mv: Move,
    pub position: Position,
}

/// One game between a human and the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSession {
    pub id: String,
    pub scheme: ColoringScheme,
    pub start: Position,
    pub position: Position,
    pub turn: Side,
    pub history: Vec<HistoryEntry>,
    pub finished: bool,
    pub winner: Option<Side>,
    /// Bumped on every change; clients may echo it to detect races.
    pub version: u64,
    pub is_green: bool,
    /// Token colors of each heap, bottom to top.
    pub stacks: Vec<Vec<Color>>,
}

impl GameSession {
    /// A fresh session. If the engine starts, its first move is applied.
    pub fn new(id: String, scheme: ColoringScheme, start: Position, first: Side) -> Self {
        let mut session = GameSession {
            id,
            scheme,
            position: start.clone(),
            start,
            turn: first,
            history: Vec::new(),
            finished: false,
            winner: None,
            version: 0,
            is_green: false,
            stacks: Vec::new(),
        };
        session.refresh();
        if session.turn == Side::Engine && !session.finished {
            session.engine_turn();
        }
        session
    }

    fn refresh(&mut self) {
        self.is_green = is_green_position(&self.scheme, &self.position);
        self.stacks = self
            .position
            .heaps
            .iter()
            .map(|&h| (1..=h).map(|level| top_color(&self.scheme, level)).collect())
            .collect();
        if self.position.is_terminal() {
            self.finished = true;
            // whoever is to move at a terminal position has lost
            self.winner = Some(self.turn.other());
        }
    }

    fn play(&mut self, mv: Move) -> Result<(), MoveError> {
        if self.finished {
            return Err(MoveError::new(Reason::Finished, "the game is over"));
        }
        let next = apply_move(&self.scheme, &self.position, &mv)?;
        self.history.push(HistoryEntry {
            mover: self.turn,
            mv,
            position: next.clone(),
        });
        self.position = next;
        self.turn = self.turn.other();
        self.version += 1;
        self.refresh();
        Ok(())
    }

    /// Applies a human move followed by the engine's reply.
    pub fn human_move(&mut self, mv: Move) -> Result<(), MoveError> {
        if !self.finished && self.turn != Side::Human {
            return Err(MoveError::new(Reason::Finished, "it is not the human's turn"));
        }
        self.play(mv)?;
        if !self.finished {
            self.engine_turn();
        }
        Ok(())
    }

    fn engine_turn(&mut self) {
        let mv = engine_move(&self.scheme, &self.position);
        self.play(mv).expect("engine moves are legal");
    }
}

/// Engine choice: a winning move when one exists, otherwise one token from
/// the smallest non-empty heap. `pos` must not be terminal.
pub fn engine_move(scheme: &ColoringScheme, pos: &Position) -> Move {
    let mut oracle = Oracle::new(scheme.clone());
    if let Ok(Some(mv)) = winning_move(&mut oracle, pos) {
        return mv;
    }
    fallback_move(pos)
}

/// Smallest legal single-token Nim removal: one token from the lowest
/// non-empty heap, first such heap on ties.
pub fn fallback_move(pos: &Position) -> Move {
    let (heap, &h) = pos
        .heaps
        .iter()
        .enumerate()
        .filter(|(_, &h)| h > 0)
        .min_by_key(|(_, &h)| h)
        .expect("position is not terminal");
    Move::nim(heap, h - 1)
}

/// Hint for the side to move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub status: chromatic_nim::GameStatus,
    #[serde(rename = "move")]
    pub mv: Option<Move>,
    pub message: String,
}

pub fn hint(scheme: &ColoringScheme, pos: &Position) -> chromatic_nim::Result<Hint> {
    let mut oracle = Oracle::new(scheme.clone());
    Ok(match winning_move(&mut oracle, pos)? {
        Some(mv) => Hint {
            status: chromatic_nim::GameStatus::N,
            message: mv.describe(),
            mv: Some(mv),
        },
        None => Hint {
            status: chromatic_nim::GameStatus::P,
            mv: None,
            message: "no winning move exists".into(),
        },
    })
}
