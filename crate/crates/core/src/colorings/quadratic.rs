//! Exact arithmetic on quadratic irrationals `(p + q√d) / r`.
//!
//! Only the handful of operations needed for Beatty sequences are provided:
//! exact floors of integer multiples, reciprocals and the complementary slope.
//! No floating point is involved anywhere on the exact path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// A real number of the form `(p + q√d) / r` in canonical form.
///
/// Canonical means: `r > 0`, `d` square-free (and `d > 1`) whenever `q != 0`,
/// `q = d = 0` for rational values, and `gcd(p, q, r) = 1`. Two values are
/// equal iff their canonical coefficients are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadraticIrrational {
    /// Builds and canonicalizes `(p + q√d) / r`.
    ///
    /// The radicand must fit in a `u64` so that its square part can be
    /// extracted by trial division.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (mut p, mut q, d, mut r) = (p.into(), q.into(), d.into(), r.into());
        if r.is_zero() {
            return Err(domain("denominator r must be non-zero"));
        }
        if d.is_negative() {
            return Err(domain("radicand d must be non-negative"));
        }
        let mut d = if q.is_zero() { BigInt::zero() } else { d };
        if !d.is_zero() {
            let radicand = d
                .to_u64()
                .ok_or_else(|| domain("radicand d must fit in 64 bits"))?;
            let (outside, inside) = split_square(radicand);
            q *= outside;
            if inside == 1 {
                p += &q;
                q = BigInt::zero();
                d = BigInt::zero();
            } else {
                d = BigInt::from(inside);
            }
        } else {
            q = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(Self { p, q, d, r })
    }

    /// The integer `n`.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            p: n.into(),
            q: BigInt::zero(),
            d: BigInt::zero(),
            r: BigInt::one(),
        }
    }

    /// The golden ratio `(1 + √5) / 2`.
    pub fn golden_ratio() -> Self {
        Self::new(1, 1, 5, 2).expect("valid constant")
    }

    /// `φ² = (3 + √5) / 2`.
    pub fn golden_ratio_squared() -> Self {
        Self::new(3, 1, 5, 2).expect("valid constant")
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_irrational(&self) -> bool {
        !self.q.is_zero()
    }

    /// Compares the value with the integer `k` exactly.
    pub fn cmp_integer(&self, k: &BigInt) -> Ordering {
        surd_sign(&(&self.p - k * &self.r), &self.q, &self.d)
    }

    /// `⌊n · self⌋` computed with integer arithmetic only.
    ///
    /// With `B = n²q²d`, the surd term `nq√d` has floor `isqrt(B)` for `q >= 0`
    /// and `-(isqrt(B) + [B not square])` for `q < 0`; since `r > 0`,
    /// `⌊(np + x) / r⌋ = ⌊(np + ⌊x⌋) / r⌋` for any real `x`.
    pub fn floor_mul(&self, n: &BigUint) -> BigInt {
        let n = BigInt::from_biguint(Sign::Plus, n.clone());
        let rational = &n * &self.p;
        if n.is_zero() || self.q.is_zero() {
            return rational.div_floor(&self.r);
        }
        let nq = &n * &self.q;
        let radicand = &nq * &nq * &self.d;
        let root = radicand.sqrt();
        let surd_floor = if self.q.is_negative() {
            let exact = &root * &root == radicand;
            -(root + BigInt::from(u8::from(!exact)))
        } else {
            root
        };
        (rational + surd_floor).div_floor(&self.r)
    }

    /// `⌊n · self⌋` for machine-sized `n`.
    pub fn floor_mul_u64(&self, n: u64) -> BigInt {
        self.floor_mul(&BigUint::from(n))
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return Err(domain("reciprocal of zero"));
        }
        Self::new(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            norm,
        )
    }

    /// The slope `α = β / (β - 1)` complementary to `β`, so that
    /// `1/α + 1/β = 1`. Requires `β` irrational and greater than one.
    pub fn complement_slope(&self) -> Result<Self> {
        self.require_irrational_above_one()?;
        // (p + q√d) / (p - r + q√d), rationalized by (p - r - q√d)
        let shifted = &self.p - &self.r;
        let q2d = &self.q * &self.q * &self.d;
        let num_p = &self.p * &shifted - &q2d;
        let num_q = -(&self.q * &self.r);
        let den = &shifted * &shifted - q2d;
        Self::new(num_p, num_q, self.d.clone(), den)
    }

    pub(crate) fn require_irrational_above_one(&self) -> Result<()> {
        if !self.is_irrational() {
            return Err(domain(format!("slope {self} is rational")));
        }
        if self.cmp_integer(&BigInt::one()) != Ordering::Greater {
            return Err(domain(format!("slope {self} is not greater than 1")));
        }
        Ok(())
    }

    /// Approximate value, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * d.sqrt()) / r
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let coeff = self.q.abs();
        let surd = if coeff.is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", coeff, self.d)
        };
        if self.r.is_one() {
            write!(f, "{} {} {}", self.p, sign, surd)
        } else {
            write!(f, "({} {} {})/{}", self.p, sign, surd, self.r)
        }
    }
}

/// Sign of `a + q√d` for `d >= 0`.
fn surd_sign(a: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    if q.is_zero() || d.is_zero() {
        return a.cmp(&zero);
    }
    match (a.cmp(&zero), q.cmp(&zero)) {
        (Ordering::Greater | Ordering::Equal, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less | Ordering::Equal, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, _) => (a * a).cmp(&(q * q * d)),
        (_, _) => (q * q * d).cmp(&(a * a)),
    }
}

/// Splits `n` as `outside² · inside` with `inside` square-free.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut f = 2u64;
    while f.saturating_mul(f).saturating_mul(f) <= n {
        let mut exponent = 0;
        while n.is_multiple_of(f) {
            n /= f;
            exponent += 1;
        }
        outside *= f.pow(exponent / 2);
        if exponent % 2 == 1 {
            inside *= f;
        }
        f += 1;
    }
    // every remaining prime factor exceeds the cube root, so n is 1, p, p·q or p²
    let root = n.sqrt();
    if root * root == n {
        outside *= root;
    } else {
        inside *= n;
    }
    (outside, inside)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: i64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    #[test]
    fn canonical_form_reduces() {
        assert_eq!(qi(6, 2, 5, 4), qi(3, 1, 5, 2));
        assert_eq!(qi(-3, -1, 5, -2), qi(3, 1, 5, 2));
        assert_eq!(qi(0, 1, 8, 1), qi(0, 2, 2, 1));
        assert_eq!(qi(1, 3, 4, 1), QuadraticIrrational::integer(7));
        assert!(!qi(1, 3, 9, 2).is_irrational());
        assert!(qi(1, 1, 12, 2).is_irrational());
        assert_eq!(qi(1, 1, 12, 2), qi(1, 2, 3, 2));
    }

    #[test]
    fn square_split() {
        assert_eq!(split_square(1), (1, 1));
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(49), (7, 1));
        assert_eq!(split_square(1_000_003 * 1_000_003), (1_000_003, 1));
        assert_eq!(split_square(999_983 * 1_000_003), (1, 999_983 * 1_000_003));
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(QuadraticIrrational::new(1, 1, 5, 0).is_err());
        assert!(QuadraticIrrational::new(1, 1, -5, 1).is_err());
    }

    #[test]
    fn floor_mul_examples() {
        let phi2 = QuadraticIrrational::golden_ratio_squared();
        assert_eq!(phi2.floor_mul_u64(1), BigInt::from(2));
        assert_eq!(phi2.floor_mul_u64(0), BigInt::from(0));
        assert_eq!(QuadraticIrrational::golden_ratio().floor_mul_u64(3), BigInt::from(4));
    }

    #[test]
    fn floor_mul_negative_surd() {
        // (5 - √2)/1 ≈ 3.5858
        let x = qi(5, -1, 2, 1);
        assert_eq!(x.floor_mul_u64(1), BigInt::from(3));
        assert_eq!(x.floor_mul_u64(10), BigInt::from(35));
        // 2 - √3 ≈ 0.26795, times 4 ≈ 1.0718
        assert_eq!(qi(2, -1, 3, 1).floor_mul_u64(4), BigInt::from(1));
    }

    #[test]
    fn complement_of_phi_squared_is_phi() {
        let alpha = QuadraticIrrational::golden_ratio_squared()
            .complement_slope()
            .unwrap();
        assert_eq!(alpha, QuadraticIrrational::golden_ratio());
    }

    #[test]
    fn complement_of_two_plus_root_two_is_root_two() {
        let alpha = qi(2, 1, 2, 1).complement_slope().unwrap();
        assert_eq!(alpha, qi(0, 1, 2, 1));
    }

    #[test]
    fn complement_requires_irrational_above_one() {
        assert!(QuadraticIrrational::integer(3).complement_slope().is_err());
        // (√5 - 1)/2 ≈ 0.618
        assert!(qi(-1, 1, 5, 2).complement_slope().is_err());
    }

    #[test]
    fn reciprocal() {
        let phi = QuadraticIrrational::golden_ratio();
        assert_eq!(phi.recip().unwrap(), qi(-1, 1, 5, 2));
        assert!(QuadraticIrrational::integer(0).recip().is_err());
    }

    #[test]
    fn compare_with_integers() {
        let phi2 = QuadraticIrrational::golden_ratio_squared();
        assert_eq!(phi2.cmp_integer(&BigInt::from(2)), Ordering::Greater);
        assert_eq!(phi2.cmp_integer(&BigInt::from(3)), Ordering::Less);
        assert_eq!(qi(-3, 1, 2, 1).cmp_integer(&BigInt::from(-1)), Ordering::Less);
        assert_eq!(qi(3, -1, 2, 1).cmp_integer(&BigInt::from(1)), Ordering::Greater);
    }

    #[test]
    fn display() {
        assert_eq!(QuadraticIrrational::golden_ratio_squared().to_string(), "(3 + √5)/2");
        assert_eq!(qi(2, -3, 2, 1).to_string(), "2 - 3√2");
    }
}
