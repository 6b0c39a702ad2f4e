//! Rules of k-stack S-Chromatic Nim.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{Color, ColoringScheme};

/// Default per-heap height limit for positions handled by the engine.
pub const DEFAULT_MAX_HEIGHT: u64 = 1_000_000;

/// Heap heights, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub heaps: Vec<u64>,
}

impl Position {
    pub fn new(heaps: impl Into<Vec<u64>>) -> Self {
        Self {
            heaps: heaps.into(),
        }
    }

    pub fn zero(k: usize) -> Self {
        Self { heaps: vec![0; k] }
    }

    pub fn arity(&self) -> usize {
        self.heaps.len()
    }

    pub fn total(&self) -> u64 {
        self.heaps.iter().sum()
    }

    pub fn is_terminal(&self) -> bool {
        self.heaps.iter().all(|&h| h == 0)
    }

    pub fn max_height(&self) -> u64 {
        self.heaps.iter().copied().max().unwrap_or(0)
    }

    /// Heights sorted ascending; positions that are permutations of each
    /// other share this key.
    pub fn sorted(&self) -> Vec<u64> {
        let mut heaps = self.heaps.clone();
        heaps.sort_unstable();
        heaps
    }

    /// Parses a comma-separated list such as `4,2`.
    pub fn parse(text: &str) -> Result<Self, MoveError> {
        let heaps = text
            .split(',')
            .map(|part| part.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| MoveError::new(Reason::Malformed, format!("bad heap list {text:?}: {e}")))?;
        Ok(Self { heaps })
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.heaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u64>> for Position {
    fn from(heaps: Vec<u64>) -> Self {
        Self { heaps }
    }
}

/// A move. Heap indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    /// Lower one heap to `to`.
    Nim { heap: usize, to: u64 },
    /// From a green position, move to any componentwise smaller position.
    Green { to: Vec<u64> },
}

impl Move {
    pub fn nim(heap: usize, to: u64) -> Self {
        Move::Nim { heap, to }
    }

    pub fn green(to: impl Into<Vec<u64>>) -> Self {
        Move::Green { to: to.into() }
    }

    /// Text form used by the CLI: 1-based heap numbers.
    pub fn describe(&self) -> String {
        match self {
            Move::Nim { heap, to } => format!("heap {} -> {}", heap + 1, to),
            Move::Green { to } => format!("green -> {}", Position::new(to.clone())),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Why a move was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// Heap index outside the position.
    HeapIndex,
    /// Target has a different number of heaps.
    Arity,
    /// The move removes no tokens or increases a heap.
    NotDecreasing,
    /// A green move was attempted from a position with a red top token.
    NotGreen,
    /// The game is already over.
    Finished,
    /// Unparseable input.
    Malformed,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("illegal move ({reason:?}): {message}")]
pub struct MoveError {
    pub reason: Reason,
    pub message: String,
}

impl MoveError {
    pub fn new(reason: Reason, message: impl Into<String>) -> Self {
        Self {
            reason,
            message: message.into(),
        }
    }
}

/// Color of a heap's top token; an empty heap counts as green.
pub fn top_color(scheme: &ColoringScheme, height: u64) -> Color {
    if height == 0 {
        Color::Green
    } else {
        scheme.color_u64(height).expect("positive level")
    }
}

/// True iff no heap height is a red level.
pub fn is_green_position(scheme: &ColoringScheme, pos: &Position) -> bool {
    pos.heaps
        .iter()
        .all(|&h| top_color(scheme, h) == Color::Green)
}

/// Every legal move, in a deterministic order.
///
/// From a non-green position these are the Nim moves, by heap index and then
/// target height ascending. From a green position every componentwise smaller
/// target is reported as a [`Move::Green`], in lexicographic order.
pub fn legal_moves(scheme: &ColoringScheme, pos: &Position) -> Vec<Move> {
    if pos.is_terminal() {
        return Vec::new();
    }
    if is_green_position(scheme, pos) {
        DominatedTargets::new(&pos.heaps).map(Move::green).collect()
    } else {
        nim_moves(pos).collect()
    }
}

/// Nim moves from `pos`, by heap index then target height.
pub fn nim_moves(pos: &Position) -> impl Iterator<Item = Move> + '_ {
    pos.heaps
        .iter()
        .enumerate()
        .flat_map(|(heap, &h)| (0..h).map(move |to| Move::nim(heap, to)))
}

/// Number of legal moves without materializing them.
pub fn legal_move_count(scheme: &ColoringScheme, pos: &Position) -> u128 {
    if is_green_position(scheme, pos) {
        pos.heaps.iter().map(|&h| u128::from(h) + 1).product::<u128>() - 1
    } else {
        pos.heaps.iter().map(|&h| u128::from(h)).sum()
    }
}

/// Checks a move against the rules and returns the resulting position.
pub fn apply_move(scheme: &ColoringScheme, pos: &Position, mv: &Move) -> Result<Position, MoveError> {
    match mv {
        Move::Nim { heap, to } => {
            let Some(&current) = pos.heaps.get(*heap) else {
                return Err(MoveError::new(
                    Reason::HeapIndex,
                    format!("heap {heap} does not exist in {pos}"),
                ));
            };
            if *to >= current {
                return Err(MoveError::new(
                    Reason::NotDecreasing,
                    format!("heap {heap} has {current} tokens, cannot move to {to}"),
                ));
            }
            let mut next = pos.clone();
            next.heaps[*heap] = *to;
            Ok(next)
        }
        Move::Green { to } => {
            if to.len() != pos.arity() {
                return Err(MoveError::new(
                    Reason::Arity,
                    format!("target has {} heaps, position has {}", to.len(), pos.arity()),
                ));
            }
            if to.iter().zip(&pos.heaps).any(|(t, h)| t > h) || to == &pos.heaps {
                return Err(MoveError::new(
                    Reason::NotDecreasing,
                    format!("{} is not strictly below {pos}", Position::new(to.clone())),
                ));
            }
            if !is_green_position(scheme, pos) {
                return Err(MoveError::new(
                    Reason::NotGreen,
                    format!("{pos} has a red top token, only Nim moves are legal"),
                ));
            }
            Ok(Position::new(to.clone()))
        }
    }
}

/// All positions componentwise below `bound` except `bound` itself, in
/// lexicographic order starting from all zeros.
#[derive(Debug, Clone)]
pub struct DominatedTargets {
    bound: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl DominatedTargets {
    pub fn new(bound: &[u64]) -> Self {
        Self {
            bound: bound.to_vec(),
            next: Some(vec![0; bound.len()]),
        }
    }
}

impl Iterator for DominatedTargets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        if current == self.bound {
            return None;
        }
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            if succ[i] < self.bound[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::QuadraticIrrational;
    use proptest::prelude::*;

    fn phi2() -> ColoringScheme {
        ColoringScheme::beatty(QuadraticIrrational::golden_ratio_squared()).unwrap()
    }

    #[test]
    fn green_positions() {
        assert!(!is_green_position(&phi2(), &Position::new([4, 2])));
        assert!(is_green_position(&phi2(), &Position::new([0, 0])));
        assert!(is_green_position(&ColoringScheme::all_red(), &Position::new([0, 0])));
        assert!(is_green_position(&phi2(), &Position::new([1, 1])));
    }

    #[test]
    fn legal_move_examples() {
        let moves = legal_moves(&phi2(), &Position::new([4, 2]));
        assert_eq!(
            moves,
            vec![
                Move::nim(0, 0),
                Move::nim(0, 1),
                Move::nim(0, 2),
                Move::nim(0, 3),
                Move::nim(1, 0),
                Move::nim(1, 1),
            ]
        );
        let moves = legal_moves(&phi2(), &Position::new([1, 1]));
        assert_eq!(
            moves,
            vec![Move::green([0, 0]), Move::green([0, 1]), Move::green([1, 0])]
        );
        assert!(legal_moves(&phi2(), &Position::new([0, 0])).is_empty());
    }

    #[test]
    fn apply_examples() {
        let s = phi2();
        assert_eq!(
            apply_move(&s, &Position::new([4, 2]), &Move::nim(0, 1)).unwrap(),
            Position::new([1, 2])
        );
        assert_eq!(
            apply_move(&s, &Position::new([1, 1]), &Move::green([0, 0])).unwrap(),
            Position::new([0, 0])
        );
        let err = apply_move(&s, &Position::new([4, 2]), &Move::green([1, 1])).unwrap_err();
        assert_eq!(err.reason, Reason::NotGreen);
    }

    #[test]
    fn apply_rejections() {
        let s = phi2();
        let pos = Position::new([4, 2]);
        let reason = |mv: Move| apply_move(&s, &pos, &mv).unwrap_err().reason;
        assert_eq!(reason(Move::nim(2, 0)), Reason::HeapIndex);
        assert_eq!(reason(Move::nim(0, 4)), Reason::NotDecreasing);
        assert_eq!(reason(Move::nim(1, 3)), Reason::NotDecreasing);
        assert_eq!(reason(Move::green([4, 2])), Reason::NotDecreasing);
        assert_eq!(reason(Move::green([5, 0])), Reason::NotDecreasing);
        assert_eq!(reason(Move::green([0])), Reason::Arity);
        // Nim moves stay legal from green positions
        assert_eq!(
            apply_move(&s, &Position::new([1, 1]), &Move::nim(1, 0)).unwrap(),
            Position::new([1, 0])
        );
    }

    #[test]
    fn wire_format() {
        assert_eq!(
            serde_json::to_string(&Move::nim(0, 1)).unwrap(),
            r#"{"nim":{"heap":0,"to":1}}"#
        );
        assert_eq!(
            serde_json::to_string(&Move::green([0, 0])).unwrap(),
            r#"{"green":{"to":[0,0]}}"#
        );
        assert_eq!(
            serde_json::to_string(&Position::new([4, 2])).unwrap(),
            r#"{"heaps":[4,2]}"#
        );
        let mv: Move = serde_json::from_str(r#"{"green":{"to":[1,0,2]}}"#).unwrap();
        assert_eq!(mv, Move::green([1, 0, 2]));
    }

    #[test]
    fn parse_heaps() {
        assert_eq!(Position::parse("4, 2").unwrap(), Position::new([4, 2]));
        assert_eq!(Position::parse("x").unwrap_err().reason, Reason::Malformed);
    }

    fn scheme_strategy() -> impl Strategy<Value = ColoringScheme> {
        prop_oneof![
            Just(phi2()),
            Just(ColoringScheme::Evil),
            Just(ColoringScheme::rational(3, 2).unwrap()),
            ("[RG]{0,4}", "[RG]{1,5}")
                .prop_map(|(a, b)| ColoringScheme::explicit_from_str(&a, &b).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn move_invariants(
            scheme in scheme_strategy(),
            heaps in proptest::collection::vec(0u64..7, 1..4),
        ) {
            let pos = Position::new(heaps);
            let moves = legal_moves(&scheme, &pos);
            prop_assert_eq!(moves.len() as u128, legal_move_count(&scheme, &pos));
            for mv in &moves {
                let next = apply_move(&scheme, &pos, mv).unwrap();
                prop_assert!(next.total() < pos.total());
                prop_assert!(next.heaps.iter().zip(&pos.heaps).all(|(a, b)| a <= b));
            }
            if is_green_position(&scheme, &pos) {
                let targets: std::collections::HashSet<Position> = moves
                    .iter()
                    .map(|m| apply_move(&scheme, &pos, m).unwrap())
                    .collect();
                for nim in nim_moves(&pos) {
                    prop_assert!(targets.contains(&apply_move(&scheme, &pos, &nim).unwrap()));
                }
            } else {
                let all_nim = moves.iter().all(|m| matches!(m, Move::Nim { .. }));
                prop_assert!(all_nim);
            }
            prop_assert_eq!(moves.is_empty(), pos.is_terminal());
        }
    }
}
