use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::PPositionPair;
use crate::colorings::{is_evil, is_odious, is_vile};

/// Closed form: `b_n` is the `n`-th positive evil number and `a_n` sits
/// one, two or three below it depending on the parities of `n`.
pub fn evil_nth_closed(n: &BigUint) -> PPositionPair {
    if n.is_zero() {
        return PPositionPair::zero();
    }
    let odious = is_odious(n);
    let b: BigUint = (n << 1u32) + u32::from(odious);
    let vile = is_vile(n).expect("n is positive");
    let gap = match (vile, odious) {
        (true, _) => 2u32,
        (false, false) => 1,
        (false, true) => 3,
    };
    PPositionPair::new(n.clone(), &b - gap, b)
}

/// mex recursion: `a_n` is the least value not yet used by an earlier pair
/// and `b_n` the smallest unused evil number above `a_n`. Pairs are
/// memoized.
#[derive(Clone, Debug, Default)]
pub struct EvilRecursion {
    pairs: Vec<(u64, u64)>,
    taken: Vec<bool>,
    next_free: u64,
}

impl EvilRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    fn mark(&mut self, v: u64) {
        let v = v as usize;
        if self.taken.len() <= v {
            self.taken.resize(v + 1, false);
        }
        self.taken[v] = true;
    }

    fn is_taken(&self, v: u64) -> bool {
        self.taken.get(v as usize).copied().unwrap_or(false)
    }

    pub fn nth(&mut self, n: u64) -> PPositionPair {
        while self.pairs.len() as u64 <= n {
            let (a, b) = if self.pairs.is_empty() {
                (0, 0)
            } else {
                while self.is_taken(self.next_free) {
                    self.next_free += 1;
                }
                let a = self.next_free;
                let b = (a + 1..)
                    .find(|&v| is_evil(&v) && !self.is_taken(v))
                    .expect("evil numbers are unbounded");
                (a, b)
            };
            self.mark(a);
            self.mark(b);
            self.pairs.push((a, b));
        }
        let (a, b) = self.pairs[n as usize];
        PPositionPair::new(n, a, b)
    }
}

pub fn evil_nth_mex(n: u64) -> PPositionPair {
    EvilRecursion::new().nth(n)
}

/// Closed-form pairs with `b <= height`, including `(0, 0)`.
pub fn evil_pairs_upto(height: u64) -> Vec<PPositionPair> {
    (0u64..)
        .map(|n| evil_nth_closed(&BigUint::from(n)))
        .take_while(|p| p.b.to_u64().is_some_and(|b| b <= height))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn closed(n: u64) -> (u64, u64) {
        evil_nth_closed(&BigUint::from(n)).to_u64s().unwrap()
    }

    #[test]
    fn recursion_examples() {
        let mut rec = EvilRecursion::new();
        assert_eq!(rec.nth(0).to_u64s(), Some((0, 0)));
        assert_eq!(rec.nth(1).to_u64s(), Some((1, 3)));
        assert_eq!(rec.nth(2).to_u64s(), Some((2, 5)));
        assert_eq!(evil_nth_mex(3).to_u64s(), Some((4, 6)));
    }

    #[test]
    fn closed_examples() {
        assert_eq!(closed(0), (0, 0));
        assert_eq!(closed(1), (1, 3));
        assert_eq!(closed(2), (2, 5));
        assert_eq!(closed(3), (4, 6));
    }

    #[test]
    fn closed_matches_recursion() {
        let mut rec = EvilRecursion::new();
        for n in 0..2000 {
            assert_eq!(rec.nth(n).to_u64s(), Some(closed(n)), "n={n}");
        }
    }

    #[test]
    fn huge_index() {
        let q = BigUint::from(17509u32).pow(17509u32);
        let pair = evil_nth_closed(&q);
        let two_q: BigUint = &q << 1u32;
        assert_eq!(pair.b, two_q);
        assert_eq!(pair.a, two_q - 2u32);
    }

    #[test]
    fn pairs_upto_bound() {
        let listed: Vec<_> = evil_pairs_upto(6).iter().map(|p| p.to_u64s().unwrap()).collect();
        assert_eq!(listed, vec![(0, 0), (1, 3), (2, 5), (4, 6)]);
    }
}
