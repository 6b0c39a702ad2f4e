use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::PPositionPair;
use crate::error::{domain, Result};

/// `(βn + t, β((β - 1)n + t))` for `1 <= t <= β - 1`.
///
/// The pair's index is its rank by `a`, which is `(β - 1)n + t`.
pub fn integer_nth(beta: u64, n: &BigUint, t: u64) -> Result<PPositionPair> {
    if beta < 2 {
        return Err(domain(format!("integer slope must be >= 2, got {beta}")));
    }
    if t == 0 || t >= beta {
        return Err(domain(format!("t must lie in 1..={}, got {t}", beta - 1)));
    }
    let rank: BigUint = n * (beta - 1) + t;
    let a = n * beta + t;
    let b = &rank * beta;
    Ok(PPositionPair::new(rank, a, b))
}

/// The pair of rank `i` by increasing `a`; rank 0 is `(0, 0)`.
pub fn integer_nth_by_rank(beta: u64, i: &BigUint) -> Result<PPositionPair> {
    if i.is_zero() {
        if beta < 2 {
            return Err(domain(format!("integer slope must be >= 2, got {beta}")));
        }
        return Ok(PPositionPair::zero());
    }
    let (n, t) = (i - 1u32).div_rem(&BigUint::from(beta.saturating_sub(1).max(1)));
    let t = t.to_u64().expect("remainder below beta") + 1;
    integer_nth(beta, &n, t)
}

/// Pairs with `b <= height`, including `(0, 0)`.
pub fn integer_pairs_upto(beta: u64, height: u64) -> Result<Vec<PPositionPair>> {
    (0..=height / beta.max(1))
        .map(|i| integer_nth_by_rank(beta, &BigUint::from(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(beta: u64, n: u64, t: u64) -> (u64, u64) {
        integer_nth(beta, &BigUint::from(n), t).unwrap().to_u64s().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(pair(2, 0, 1), (1, 2));
        assert_eq!(pair(3, 0, 2), (2, 6));
        assert_eq!(pair(3, 1, 1), (4, 9));
        assert!(integer_nth(3, &BigUint::from(0u32), 3).is_err());
        assert!(integer_nth(3, &BigUint::from(0u32), 0).is_err());
        assert!(integer_nth(1, &BigUint::from(0u32), 1).is_err());
    }

    #[test]
    fn coordinates_split_multiples() {
        for beta in 2..=6u64 {
            let pairs = integer_pairs_upto(beta, 200).unwrap();
            let bs: Vec<u64> = pairs[1..].iter().map(|p| p.to_u64s().unwrap().1).collect();
            let multiples: Vec<u64> = (1..=200 / beta).map(|m| m * beta).collect();
            assert_eq!(bs, multiples);
            let mut as_: Vec<u64> = pairs[1..].iter().map(|p| p.to_u64s().unwrap().0).collect();
            as_.sort_unstable();
            let expected: Vec<u64> = (1..).filter(|m| m % beta != 0).take(as_.len()).collect();
            assert_eq!(as_, expected);
        }
    }

    #[test]
    fn injective_in_n_and_t() {
        let mut seen = std::collections::HashSet::new();
        for n in 0..30 {
            for t in 1..5 {
                assert!(seen.insert(pair(5, n, t)));
            }
        }
    }
}
