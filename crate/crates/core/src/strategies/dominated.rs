use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{PPositionPair, StrategyAdvice};
use crate::colorings::{domination, Color, ColoringScheme, Dominance};
use crate::engine::{top_color, Move, Position};
use crate::error::{domain, Error, Result};
use crate::oracle::Limits;

/// Horizon for the domination check behind closed-form lookups whose
/// answer lies beyond anything we could scan.
const NTH_CHECK_HORIZON: u64 = 1 << 16;

fn require(scheme: &ColoringScheme, horizon: u64, want: Dominance) -> Result<()> {
    let class = domination(scheme, horizon.max(1))?;
    if class.kind == want {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{scheme} is {:?} up to {}, strategy needs {want:?}",
            class.kind, class.horizon
        )))
    }
}

fn two_heaps(pos: &Position) -> Result<(u64, u64)> {
    match pos.heaps[..] {
        [x, y] => Ok((x, y)),
        _ => Err(domain(format!("expected 2 heaps, got {}", pos.arity()))),
    }
}

fn small(v: BigUint) -> u64 {
    v.to_u64().expect("level below a u64 heap height")
}

fn count(scheme: &ColoringScheme, color: Color, height: u64) -> u64 {
    small(scheme.count_through(color, &BigUint::from(height)))
}

/// Height of the `i`-th level of `color`, or 0 for `i = 0`.
fn level(scheme: &ColoringScheme, color: Color, i: u64) -> Result<u64> {
    if i == 0 {
        return Ok(0);
    }
    scheme.nth(color, &BigUint::from(i)).map(small)
}

/// Winning-move advice for a green-dominated scheme.
pub fn green_dominated_advice(scheme: &ColoringScheme, pos: &Position) -> Result<StrategyAdvice> {
    let (x, y) = two_heaps(pos)?;
    require(scheme, x.max(y), Dominance::GreenDominated)?;
    let heights = [x, y];
    let colors = heights.map(|h| top_color(scheme, h));
    match colors {
        [Color::Green, Color::Green] => {
            if x == 0 && y == 0 {
                Ok(StrategyAdvice::losing())
            } else {
                Ok(StrategyAdvice::winning(Move::green([0, 0])))
            }
        }
        [Color::Red, Color::Red] => {
            let (tall, short) = if x >= y { (0, 1) } else { (1, 0) };
            let r = count(scheme, Color::Red, heights[short]);
            let to = level(scheme, Color::Green, r)?;
            Ok(StrategyAdvice::winning(Move::nim(tall, to)))
        }
        _ => {
            let red = if colors[0] == Color::Red { 0 } else { 1 };
            let green = 1 - red;
            let r = count(scheme, Color::Red, heights[red]);
            let g = count(scheme, Color::Green, heights[green]);
            Ok(if r == g {
                StrategyAdvice::losing()
            } else if r > g {
                StrategyAdvice::winning(Move::nim(red, level(scheme, Color::Red, g)?))
            } else {
                StrategyAdvice::winning(Move::nim(green, level(scheme, Color::Green, r)?))
            })
        }
    }
}

/// `(i-th green, i-th red)`, with `(0, 0)` at `i = 0`.
pub fn green_dominated_nth(scheme: &ColoringScheme, i: &BigUint) -> Result<PPositionPair> {
    if i.is_zero() {
        return Ok(PPositionPair::zero());
    }
    let b = scheme.nth_red(i)?;
    let horizon = b.to_u64().map_or(NTH_CHECK_HORIZON, |b| b.min(NTH_CHECK_HORIZON));
    require(scheme, horizon, Dominance::GreenDominated)?;
    let a = scheme.nth_green(i)?;
    Ok(PPositionPair::new(i.clone(), a, b))
}

/// Green-dominated pairs with `b <= height`, including `(0, 0)`.
pub fn green_dominated_pairs_upto(
    scheme: &ColoringScheme,
    height: u64,
) -> Result<Vec<PPositionPair>> {
    require(scheme, height, Dominance::GreenDominated)?;
    let colors = scheme.colors_upto(height);
    let levels = |c: Color| -> Vec<u64> { (1..=height).filter(|&h| colors[h as usize] == c).collect() };
    let (greens, reds) = (levels(Color::Green), levels(Color::Red));
    let mut out = vec![PPositionPair::zero()];
    out.extend(
        greens
            .iter()
            .zip(&reds)
            .enumerate()
            .map(|(i, (&a, &b))| PPositionPair::new(i as u64 + 1, a, b)),
    );
    Ok(out)
}

/// Smallest green level `k < d` such that, counting from `k`, every red
/// level in `k..=d` has at least as many greens below it as reds.
pub fn lgd_probe(scheme: &ColoringScheme, d: u64) -> Result<Option<u64>> {
    if d == 0 || scheme.color_u64(d)? != Color::Red {
        return Err(domain(format!("level {d} is not red")));
    }
    let colors = scheme.colors_upto(d);
    'start: for k in (1..d).filter(|&k| colors[k as usize] == Color::Green) {
        let (mut greens, mut reds) = (0u64, 0u64);
        for &c in &colors[k as usize..=d as usize] {
            match c {
                Color::Green => greens += 1,
                Color::Red => {
                    reds += 1;
                    if reds > greens {
                        continue 'start;
                    }
                }
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Result of scanning levels `1..=height` of a red-dominated scheme.
struct RedScan {
    /// Completed pairs `(a, b)` in order of `b`.
    pairs: Vec<(u64, u64)>,
    /// Greens still waiting for a red partner, oldest first.
    pending: VecDeque<u64>,
}

/// Bottom-up scan: a red level closes the locally green-dominated segment
/// that is open below it by pairing with its oldest unmatched green, and
/// otherwise pairs with itself.
fn red_scan(scheme: &ColoringScheme, height: u64) -> RedScan {
    let colors = scheme.colors_upto(height);
    let mut pairs = Vec::new();
    let mut pending = VecDeque::new();
    for d in 1..=height {
        match colors[d as usize] {
            Color::Green => pending.push_back(d),
            Color::Red => match pending.pop_front() {
                Some(g) => pairs.push((g, d)),
                None => pairs.push((d, d)),
            },
        }
    }
    RedScan { pairs, pending }
}

fn indexed(mut pairs: Vec<(u64, u64)>) -> Vec<PPositionPair> {
    pairs.push((0, 0));
    pairs.sort_unstable();
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| PPositionPair::new(i as u64, a, b))
        .collect()
}

/// Red-dominated pairs with `b <= height`, sorted by `a`, including `(0, 0)`.
pub fn red_dominated_p_positions(
    scheme: &ColoringScheme,
    height: u64,
) -> Result<Vec<PPositionPair>> {
    require(scheme, height, Dominance::RedDominated)?;
    Ok(indexed(red_scan(scheme, height).pairs))
}

/// The first `count` red-dominated pairs by increasing `a`.
pub(crate) fn red_dominated_first(scheme: &ColoringScheme, count: u64) -> Result<Vec<PPositionPair>> {
    let cap = Limits::default().max_height;
    let mut height = count.max(4);
    loop {
        require(scheme, height, Dominance::RedDominated)?;
        let scan = red_scan(scheme, height);
        // later pairs start at a pending green or at a level above `height`
        let frontier = scan.pending.front().copied().unwrap_or(height + 1);
        let done: Vec<_> = scan.pairs.into_iter().filter(|&(a, _)| a < frontier).collect();
        if done.len() as u64 + 1 >= count {
            let mut out = indexed(done);
            out.truncate(count as usize);
            return Ok(out);
        }
        if height >= cap {
            return Err(Error::Resource(format!(
                "fewer than {count} pairs are settled below height {cap}"
            )));
        }
        height = (height * 2).min(cap);
    }
}

/// Winning-move advice for a red-dominated scheme.
pub fn red_dominated_advice(scheme: &ColoringScheme, pos: &Position) -> Result<StrategyAdvice> {
    let (x, y) = two_heaps(pos)?;
    let height = x.max(y);
    require(scheme, height, Dominance::RedDominated)?;
    let mut partner = BTreeMap::new();
    for (a, b) in red_scan(scheme, height).pairs {
        partner.insert(a, b);
        partner.insert(b, a);
    }
    partner.insert(0, 0);
    if partner.get(&x) == Some(&y) {
        return Ok(StrategyAdvice::losing());
    }
    if top_color(scheme, x) == Color::Green && top_color(scheme, y) == Color::Green {
        return Ok(StrategyAdvice::winning(Move::green([0, 0])));
    }
    if let Some(&to) = partner.get(&x).filter(|&&p| p < y) {
        return Ok(StrategyAdvice::winning(Move::nim(1, to)));
    }
    if let Some(&to) = partner.get(&y).filter(|&&p| p < x) {
        return Ok(StrategyAdvice::winning(Move::nim(0, to)));
    }
    Err(domain(format!(
        "no winning move found from {pos}; the scan disagrees with the game"
    )))
}
