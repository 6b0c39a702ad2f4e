use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::PPositionPair;
use crate::colorings::{beatty_membership, BeattySlope, QuadraticIrrational};
use crate::error::{domain, Result};

fn slope_above_two(beta: &QuadraticIrrational) -> Result<BeattySlope> {
    let slope = BeattySlope::new(beta.clone())?;
    if beta.cmp_integer(&BigInt::from(2)) != Ordering::Greater {
        return Err(domain(format!("beatty strategy needs beta > 2, got {beta}")));
    }
    Ok(slope)
}

fn floor_to_nat(x: BigInt) -> BigUint {
    x.to_biguint().expect("floors of positive multiples are non-negative")
}

/// `(⌊αn⌋, ⌊βn⌋)` with `1/α + 1/β = 1`.
pub fn beatty_nth(beta: &QuadraticIrrational, n: &BigUint) -> Result<PPositionPair> {
    let slope = slope_above_two(beta)?;
    Ok(PPositionPair::new(
        n.clone(),
        floor_to_nat(slope.alpha().floor_mul(n)),
        floor_to_nat(beta.floor_mul(n)),
    ))
}

/// Whether `(x, y)` is a P-position of the Beatty game.
///
/// The larger coordinate must be `⌊βn⌋`; the candidate `n` is the unique
/// one that membership testing identifies, and the smaller coordinate must
/// then be `⌊αn⌋`.
pub fn beatty_is_p(beta: &QuadraticIrrational, x: &BigUint, y: &BigUint) -> Result<bool> {
    let slope = slope_above_two(beta)?;
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if hi.is_zero() {
        return Ok(true);
    }
    if !beatty_membership(beta, hi)? {
        return Ok(false);
    }
    let n = floor_to_nat(slope.beta().recip()?.floor_mul(&(hi + 1u32)));
    Ok(floor_to_nat(slope.alpha().floor_mul(&n)) == *lo)
}

/// Pairs with `b <= height`, starting at `n = 0`.
pub fn beatty_pairs_upto(beta: &QuadraticIrrational, height: u64) -> Result<Vec<PPositionPair>> {
    let mut out = Vec::new();
    for n in 0u64.. {
        let pair = beatty_nth(beta, &BigUint::from(n))?;
        if pair.b.to_u64().is_none_or(|b| b > height) {
            break;
        }
        out.push(pair);
    }
    Ok(out)
}
