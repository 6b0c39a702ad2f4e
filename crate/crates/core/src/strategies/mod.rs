//! Closed-form P-positions and winning-move advice for 2-heap games.

mod beatty;
mod dominated;
mod evil;
mod integer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use beatty::{beatty_is_p, beatty_nth, beatty_pairs_upto};
pub use dominated::{
    green_dominated_advice, green_dominated_nth, green_dominated_pairs_upto, lgd_probe,
    red_dominated_advice, red_dominated_p_positions,
};
pub use evil::{evil_nth_closed, evil_nth_mex, evil_pairs_upto, EvilRecursion};
pub use integer::{integer_nth, integer_nth_by_rank, integer_pairs_upto};

use crate::colorings::{domination, json_biguint, ColoringScheme, Dominance};
use crate::engine::{Move, Position};
use crate::error::{Error, Result};
use crate::oracle::{GameStatus, Oracle};

/// The `index`-th P-position `(a, b)` with `a <= b` of a 2-heap game.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PPositionPair {
    #[serde(with = "json_biguint")]
    pub index: BigUint,
    #[serde(with = "json_biguint")]
    pub a: BigUint,
    #[serde(with = "json_biguint")]
    pub b: BigUint,
}

impl PPositionPair {
    pub fn new(index: impl Into<BigUint>, a: impl Into<BigUint>, b: impl Into<BigUint>) -> Self {
        let (a, b) = (a.into(), b.into());
        debug_assert!(a <= b);
        Self {
            index: index.into(),
            a,
            b,
        }
    }

    pub fn zero() -> Self {
        Self::new(0u32, 0u32, 0u32)
    }

    pub fn to_u64s(&self) -> Option<(u64, u64)> {
        Some((self.a.to_u64()?, self.b.to_u64()?))
    }
}

impl fmt::Display for PPositionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Status of a position and, for N-positions, a winning move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyAdvice {
    pub status: GameStatus,
    #[serde(rename = "move")]
    pub mv: Option<Move>,
}

impl StrategyAdvice {
    pub fn losing() -> Self {
        Self {
            status: GameStatus::P,
            mv: None,
        }
    }

    pub fn winning(mv: Move) -> Self {
        Self {
            status: GameStatus::N,
            mv: Some(mv),
        }
    }
}

/// Advice from whichever structural strategy applies to the scheme on the
/// position's height range, or `None` when neither domination holds or the
/// position does not have two heaps.
pub fn advise(scheme: &ColoringScheme, pos: &Position) -> Result<Option<StrategyAdvice>> {
    if pos.arity() != 2 {
        return Ok(None);
    }
    match domination(scheme, pos.max_height().max(1))?.kind {
        Dominance::GreenDominated => green_dominated_advice(scheme, pos).map(Some),
        Dominance::RedDominated => red_dominated_advice(scheme, pos).map(Some),
        Dominance::Neither => Ok(None),
    }
}

/// A winning move from `pos`, or `None` when `pos` is a P-position. Uses the
/// structural advice where it applies and the oracle otherwise.
pub fn winning_move(oracle: &mut Oracle, pos: &Position) -> Result<Option<Move>> {
    if let Some(advice) = advise(oracle.scheme(), pos)? {
        return Ok(advice.mv);
    }
    Ok(oracle.winning_moves(pos)?.into_iter().next())
}

/// Every position `(a, b)` and `(b, a)` from the pairs with both heights at
/// most `height`.
pub fn symmetrize(pairs: &[PPositionPair], height: u64) -> BTreeSet<(u64, u64)> {
    pairs
        .iter()
        .filter_map(PPositionPair::to_u64s)
        .filter(|&(_, b)| b <= height)
        .flat_map(|(a, b)| [(a, b), (b, a)])
        .collect()
}

/// Named P-position generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    /// Complementary Beatty pairs, irrational `β > 2`.
    Beatty,
    /// Arithmetic-progression pairs, integer `β >= 2`.
    Integer,
    /// i-th green level with i-th red level, green-dominated schemes.
    GreenDominated,
    /// Bottom-up scan for red-dominated schemes.
    RedDominated,
    /// Closed form for the evil coloring.
    EvilClosed,
    /// mex recursion for the evil coloring.
    EvilMex,
    /// Brute force.
    Oracle,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 7] = [
        StrategyKind::Beatty,
        StrategyKind::Integer,
        StrategyKind::GreenDominated,
        StrategyKind::RedDominated,
        StrategyKind::EvilClosed,
        StrategyKind::EvilMex,
        StrategyKind::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Beatty => "beatty",
            StrategyKind::Integer => "integer",
            StrategyKind::GreenDominated => "green-dominated",
            StrategyKind::RedDominated => "red-dominated",
            StrategyKind::EvilClosed => "evil-closed",
            StrategyKind::EvilMex => "evil-mex",
            StrategyKind::Oracle => "oracle",
        }
    }

    /// The closed-form strategy naturally associated with a scheme.
    pub fn default_for(scheme: &ColoringScheme) -> StrategyKind {
        match scheme {
            ColoringScheme::Beatty(slope)
                if slope.beta().cmp_integer(&2.into()) == std::cmp::Ordering::Greater =>
            {
                StrategyKind::Beatty
            }
            ColoringScheme::IntegerMultiple(_) => StrategyKind::Integer,
            ColoringScheme::Evil => StrategyKind::EvilClosed,
            _ => match domination(scheme, 1000).map(|d| d.kind) {
                Ok(Dominance::GreenDominated) => StrategyKind::GreenDominated,
                Ok(Dominance::RedDominated) => StrategyKind::RedDominated,
                _ => StrategyKind::Oracle,
            },
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let aliases: &[(&str, StrategyKind)] = &[
            ("green", StrategyKind::GreenDominated),
            ("red", StrategyKind::RedDominated),
            ("evil", StrategyKind::EvilClosed),
        ];
        StrategyKind::ALL
            .iter()
            .map(|k| (k.name(), *k))
            .chain(aliases.iter().copied())
            .find(|(name, _)| name.eq_ignore_ascii_case(s))
            .map(|(_, k)| k)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown strategy {s:?}; expected one of {}",
                    StrategyKind::ALL.map(|k| k.name()).join(", ")
                ))
            })
    }
}

/// Pairs with `b <= height` from a closed-form strategy, sorted by `a`,
/// starting with `(0, 0)`.
pub fn pairs_upto(
    scheme: &ColoringScheme,
    kind: StrategyKind,
    height: u64,
) -> Result<Vec<PPositionPair>> {
    match kind {
        StrategyKind::Beatty => beatty_pairs_upto(beatty_slope(scheme)?, height),
        StrategyKind::Integer => integer_pairs_upto(integer_slope(scheme)?, height),
        StrategyKind::GreenDominated => green_dominated_pairs_upto(scheme, height),
        StrategyKind::RedDominated => red_dominated_p_positions(scheme, height),
        StrategyKind::EvilClosed => {
            require_evil(scheme)?;
            Ok(evil_pairs_upto(height))
        }
        StrategyKind::EvilMex => {
            require_evil(scheme)?;
            let mut rec = EvilRecursion::new();
            let mut out = Vec::new();
            for n in 0.. {
                let pair = rec.nth(n);
                if pair.b > BigUint::from(height) {
                    break;
                }
                out.push(pair);
            }
            Ok(out)
        }
        StrategyKind::Oracle => {
            let mut oracle = Oracle::new(scheme.clone());
            let positions = oracle.p_positions_upto(height, 2)?;
            Ok(positions
                .iter()
                .filter(|p| p.heaps[0] <= p.heaps[1])
                .enumerate()
                .map(|(i, p)| PPositionPair::new(i, p.heaps[0], p.heaps[1]))
                .collect())
        }
    }
}

/// The first `count` pairs by increasing `a`, starting with `(0, 0)`.
pub fn pairs_first(
    scheme: &ColoringScheme,
    kind: StrategyKind,
    count: u64,
) -> Result<Vec<PPositionPair>> {
    let indices = || (0..count).map(BigUint::from);
    match kind {
        StrategyKind::Beatty => {
            let beta = beatty_slope(scheme)?;
            indices().map(|n| beatty_nth(beta, &n)).collect()
        }
        StrategyKind::Integer => {
            let beta = integer_slope(scheme)?;
            indices().map(|n| integer_nth_by_rank(beta, &n)).collect()
        }
        StrategyKind::GreenDominated => indices()
            .map(|n| green_dominated_nth(scheme, &n))
            .collect(),
        StrategyKind::EvilClosed => {
            require_evil(scheme)?;
            Ok(indices().map(|n| evil_nth_closed(&n)).collect())
        }
        StrategyKind::EvilMex => {
            require_evil(scheme)?;
            let mut rec = EvilRecursion::new();
            Ok((0..count).map(|n| rec.nth(n)).collect())
        }
        StrategyKind::RedDominated => dominated::red_dominated_first(scheme, count),
        StrategyKind::Oracle => Err(Error::Domain(
            "the oracle enumerates by height, not by count".into(),
        )),
    }
}

fn beatty_slope(scheme: &ColoringScheme) -> Result<&crate::colorings::QuadraticIrrational> {
    match scheme {
        ColoringScheme::Beatty(slope) => Ok(slope.beta()),
        other => Err(Error::Precondition(format!(
            "beatty strategy needs an irrational beatty scheme, got {other}"
        ))),
    }
}

fn integer_slope(scheme: &ColoringScheme) -> Result<u64> {
    match scheme {
        ColoringScheme::IntegerMultiple(beta) => Ok(*beta),
        other => Err(Error::Precondition(format!(
            "integer strategy needs an integer scheme, got {other}"
        ))),
    }
}

fn require_evil(scheme: &ColoringScheme) -> Result<()> {
    match scheme {
        ColoringScheme::Evil => Ok(()),
        other => Err(Error::Precondition(format!(
            "evil strategy needs the evil scheme, got {other}"
        ))),
    }
}
