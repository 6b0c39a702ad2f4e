//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes the scheme as JSON and returns a string; errors become
//! JavaScript exceptions.

use chromatic_nim::engine::is_green_position;
use chromatic_nim::strategies::{pairs_upto, symmetrize, winning_move};
use chromatic_nim::{ColoringScheme, GameStatus, Oracle, Position, StrategyKind};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest height the page may ask for; keeps the brute-force fallback quick.
pub const MAX_HEIGHT: u64 = 200;

fn scheme(json: &str) -> Result<ColoringScheme, String> {
    ColoringScheme::from_json(json).map_err(|e| e.to_string())
}

fn bounded(value: u64) -> Result<u64, String> {
    if value > MAX_HEIGHT {
        Err(format!("at most {MAX_HEIGHT} levels in the demo"))
    } else {
        Ok(value)
    }
}

/// Level colors `1..=upto` as a string of `R` and `G`.
pub fn colors_impl(scheme_json: &str, upto: u64) -> Result<String, String> {
    let scheme = scheme(scheme_json)?;
    Ok(scheme.colors_upto(bounded(upto)?)[1..].iter().map(|c| c.letter()).collect())
}

/// 2-heap P-positions with heights at most `height`, both orientations, as
/// `{"strategy": name, "points": [[x, y], ...]}`.
pub fn p_positions_impl(scheme_json: &str, height: u64) -> Result<String, String> {
    let scheme = scheme(scheme_json)?;
    let height = bounded(height)?;
    let kind = StrategyKind::default_for(&scheme);
    let pairs = pairs_upto(&scheme, kind, height).map_err(|e| e.to_string())?;
    let points: Vec<[u64; 2]> = symmetrize(&pairs, height).into_iter().map(|(x, y)| [x, y]).collect();
    Ok(json!({ "strategy": kind, "points": points }).to_string())
}

/// Status of a position given as comma-separated heights, with a winning
/// move when there is one.
pub fn advise_impl(scheme_json: &str, heaps: &str) -> Result<String, String> {
    let scheme = scheme(scheme_json)?;
    let pos = Position::parse(heaps).map_err(|e| e.message)?;
    bounded(pos.max_height())?;
    let green = is_green_position(&scheme, &pos);
    let mut oracle = Oracle::new(scheme);
    let mv = winning_move(&mut oracle, &pos).map_err(|e| e.to_string())?;
    let status = if mv.is_some() { GameStatus::N } else { GameStatus::P };
    let description = mv.as_ref().map_or("no winning move exists".to_string(), |m| m.describe());
    Ok(json!({ "status": status, "move": mv, "description": description, "green": green }).to_string())
}

#[wasm_bindgen]
pub fn colors(scheme_json: &str, upto: u32) -> Result<String, JsError> {
    colors_impl(scheme_json, upto.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn p_positions(scheme_json: &str, height: u32) -> Result<String, JsError> {
    p_positions_impl(scheme_json, height.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn advise(scheme_json: &str, heaps: &str) -> Result<String, JsError> {
    advise_impl(scheme_json, heaps).map_err(|e| JsError::new(&e))
}
