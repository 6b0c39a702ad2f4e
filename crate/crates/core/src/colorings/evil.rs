//! Evil, odious, vile and dopey numbers, the pseudo-chromatic number τ,
//! the chromatic number χ and the mex rule.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Result};

/// Binary digit queries shared by machine integers and big integers.
pub trait BinaryDigits {
    /// Number of ones in the binary expansion.
    fn ones(&self) -> u64;
    /// Number of trailing zeros, `None` for zero.
    fn trailing_zero_count(&self) -> Option<u64>;
    fn is_odd(&self) -> bool;
}

impl BinaryDigits for u64 {
    fn ones(&self) -> u64 {
        u64::from(self.count_ones())
    }

    fn trailing_zero_count(&self) -> Option<u64> {
        (*self != 0).then(|| u64::from(self.trailing_zeros()))
    }

    fn is_odd(&self) -> bool {
        self & 1 == 1
    }
}

impl BinaryDigits for BigUint {
    fn ones(&self) -> u64 {
        self.count_ones()
    }

    fn trailing_zero_count(&self) -> Option<u64> {
        self.trailing_zeros()
    }

    fn is_odd(&self) -> bool {
        self.bit(0)
    }
}

/// Even number of ones in binary. Zero is evil.
pub fn is_evil<N: BinaryDigits + ?Sized>(n: &N) -> bool {
    n.ones().is_multiple_of(2)
}

pub fn is_odious<N: BinaryDigits + ?Sized>(n: &N) -> bool {
    !is_evil(n)
}

/// Binary expansion ends in an even number of zeros. Undefined for zero.
pub fn is_vile<N: BinaryDigits + ?Sized>(n: &N) -> Result<bool> {
    n.trailing_zero_count()
        .map(|z| z % 2 == 0)
        .ok_or_else(|| domain("vile/dopey is undefined for 0"))
}

pub fn is_dopey<N: BinaryDigits + ?Sized>(n: &N) -> Result<bool> {
    is_vile(n).map(|vile| !vile)
}

/// τ(k): odious count minus evil count over `{0, …, k}`.
///
/// Each pair `{2j, 2j+1}` holds one evil and one odious number, so the sum
/// vanishes for odd `k` and equals the contribution of `k` alone otherwise.
pub fn tau<N: BinaryDigits + ?Sized>(k: &N) -> i64 {
    if k.is_odd() {
        0
    } else if is_odious(k) {
        1
    } else {
        -1
    }
}

/// Odious count minus evil count over `{lo, …, hi}`.
pub fn tau_range(lo: u64, hi: u64) -> Result<i64> {
    if lo > hi {
        return Err(domain(format!("empty range {lo}..={hi}")));
    }
    let below = if lo == 0 { 0 } else { tau(&(lo - 1)) };
    Ok(tau(&hi) - below)
}

/// χ(k) = τ({0, …, k}) + 1 for `k >= 1`.
pub fn chi<N: BinaryDigits + ?Sized>(k: &N) -> Result<i64> {
    if k.trailing_zero_count().is_none() {
        return Err(domain("chi is defined for k >= 1"));
    }
    Ok(tau(k) + 1)
}

/// Number of evil integers in `{0, …, m}`.
pub(crate) fn evil_count_through(m: &BigUint) -> BigUint {
    // evil - odious = -τ(m), evil + odious = m + 1
    let total = m + 1u32;
    match tau(m) {
        0 => total >> 1,
        1 => (total - 1u32) >> 1,
        _ => (total + 1u32) >> 1,
    }
}

/// The `j`-th evil number counting from `j = 0` (which is 0).
pub(crate) fn nth_evil_from_zero(j: &BigUint) -> BigUint {
    let doubled: BigUint = j << 1;
    if is_odious(j) {
        doubled + 1u32
    } else {
        doubled
    }
}

/// The `j`-th odious number counting from `j = 0` (which is 1).
pub(crate) fn nth_odious_from_zero(j: &BigUint) -> BigUint {
    let doubled: BigUint = j << 1;
    if is_evil(j) {
        doubled + 1u32
    } else {
        doubled
    }
}

/// Minimum excluded non-negative integer.
pub fn mex<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    let mut present: Vec<u64> = values.into_iter().collect();
    present.sort_unstable();
    present.dedup();
    present
        .iter()
        .enumerate()
        .find(|(i, v)| **v != *i as u64)
        .map_or(present.len() as u64, |(i, _)| i as u64)
}

/// [`mex`] over big integers.
pub fn mex_big<'a, I: IntoIterator<Item = &'a BigUint>>(values: I) -> BigUint {
    let mut present: Vec<&BigUint> = values.into_iter().collect();
    present.sort_unstable();
    present.dedup();
    let mut candidate = BigUint::zero();
    for v in present {
        if *v == candidate {
            candidate += 1u32;
        } else if *v > candidate {
            break;
        }
    }
    candidate
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    /// Brute-force τ by direct counting.
    fn tau_naive(k: u64) -> i64 {
        (0..=k).map(|i| if is_evil(&i) { -1 } else { 1 }).sum()
    }

    #[test]
    fn predicates() {
        assert!(is_evil(&0u64));
        assert!(is_odious(&2u64));
        assert!(is_dopey(&2u64).unwrap());
        assert!(is_vile(&1u64).unwrap());
        assert!(is_vile(&4u64).unwrap());
        assert!(is_vile(&0u64).is_err());
        assert!(is_dopey(&BigUint::zero()).is_err());
    }

    #[test]
    fn big_example_is_evil_and_vile() {
        let q = BigUint::from(17509u32).pow(17509u32);
        assert!(is_evil(&q));
        assert!(is_vile(&q).unwrap());
    }

    #[test]
    fn tau_table() {
        let expected = [-1, 0, 1, 0, 1, 0, -1, 0];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(tau(&(k as u64)), *want, "tau({k})");
        }
        assert_eq!(tau_range(1, 2).unwrap(), 2);
        assert!(tau_range(3, 2).is_err());
    }

    #[test]
    fn tau_matches_counting() {
        for k in 0..2000u64 {
            assert_eq!(tau(&k), tau_naive(k));
        }
        for lo in 0..40u64 {
            for hi in lo..60 {
                let direct: i64 = (lo..=hi).map(|i| if is_evil(&i) { -1 } else { 1 }).sum();
                assert_eq!(tau_range(lo, hi).unwrap(), direct);
            }
        }
    }

    #[test]
    fn chi_cases() {
        assert_eq!(chi(&2u64).unwrap(), 2);
        assert_eq!(chi(&6u64).unwrap(), 0);
        assert_eq!(chi(&5u64).unwrap(), 1);
        assert!(chi(&0u64).is_err());
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([0, 1, 2, 7, 9, 13]), 3);
        assert_eq!(mex([]), 0);
        assert_eq!(mex([1, 2, 3]), 0);
        assert_eq!(mex([2, 0, 1, 1]), 3);
        let big: Vec<BigUint> = [0u32, 1, 3].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(mex_big(&big), BigUint::from(2u32));
    }

    #[test]
    fn evil_enumeration() {
        let evils: Vec<u64> = (0..200u64).filter(is_evil).collect();
        let odious: Vec<u64> = (0..200u64).filter(is_odious).collect();
        for (j, e) in evils.iter().enumerate().take(90) {
            assert_eq!(nth_evil_from_zero(&BigUint::from(j)), BigUint::from(*e));
            assert_eq!(
                evil_count_through(&BigUint::from(*e)),
                BigUint::from(j + 1)
            );
        }
        for (j, o) in odious.iter().enumerate().take(90) {
            assert_eq!(nth_odious_from_zero(&BigUint::from(j)), BigUint::from(*o));
        }
    }
}
