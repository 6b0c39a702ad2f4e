//! Coloring schemes: which stack levels are red.

pub mod evil;
pub mod quadratic;
mod scheme;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use evil::{chi, is_dopey, is_evil, is_odious, is_vile, mex, mex_big, tau, tau_range};
pub use quadratic::QuadraticIrrational;
pub use scheme::{
    beatty_membership, colors_to_string, parse_colors, BeattySlope, ColoringScheme,
    ExplicitColoring, JsonInt,
};
pub(crate) use scheme::json_biguint;

use crate::error::{domain, Result};

/// Token color. A level is red iff it belongs to the scheme's set `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "G")]
    Green,
}

impl Color {
    pub fn from_red(red: bool) -> Self {
        if red {
            Color::Red
        } else {
            Color::Green
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
        }
    }

    pub fn other(self) -> Self {
        match self {
            Color::Red => Color::Green,
            Color::Green => Color::Red,
        }
    }
}

/// Outcome of comparing the `i`-th green level `s̄_i` with the `i`-th red
/// level `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// `s̄_i < s_i` for every index checked.
    GreenDominated,
    /// `s_i < s̄_i` for every index checked.
    RedDominated,
    Neither,
}

/// A [`Dominance`] verdict together with the horizon it was checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationClass {
    pub kind: Dominance,
    pub horizon: u64,
}

/// Classifies a scheme over levels `1..=horizon`.
///
/// The scheme is green-dominated on the horizon iff every red level within it
/// has at least as many green levels below it as its own red index, and
/// red-dominated iff the symmetric condition holds at every green level.
pub fn domination(scheme: &ColoringScheme, horizon: u64) -> Result<DominationClass> {
    if horizon == 0 {
        return Err(domain("domination horizon must be >= 1"));
    }
    let colors = scheme.colors_upto(horizon);
    let (mut greens, mut reds) = (0u64, 0u64);
    let (mut green_ok, mut red_ok) = (true, true);
    for &c in &colors[1..] {
        match c {
            Color::Red => {
                reds += 1;
                green_ok &= greens >= reds;
            }
            Color::Green => {
                greens += 1;
                red_ok &= reds >= greens;
            }
        }
    }
    let kind = match (green_ok, red_ok) {
        (true, _) => Dominance::GreenDominated,
        (_, true) => Dominance::RedDominated,
        _ => Dominance::Neither,
    };
    Ok(DominationClass { kind, horizon })
}

/// `i`-th red level (1-based index).
pub fn nth_red(scheme: &ColoringScheme, i: &BigUint) -> Result<BigUint> {
    scheme.nth(Color::Red, i)
}

/// `i`-th green level (1-based index).
pub fn nth_green(scheme: &ColoringScheme, i: &BigUint) -> Result<BigUint> {
    scheme.nth(Color::Green, i)
}
