use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::evil::{evil_count_through, is_evil, nth_evil_from_zero, nth_odious_from_zero};
use super::quadratic::QuadraticIrrational;
use super::Color;
use crate::error::{domain, Error, Result};

/// Which token levels are red.
///
/// Levels are 1-based. Every variant assigns a color to every positive
/// level; level 0 never has a color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SchemeRepr", into = "SchemeRepr")]
pub enum ColoringScheme {
    /// `S = {⌊βn⌋ : n >= 1}` for an irrational `β > 1`.
    Beatty(BeattySlope),
    /// `S = {βn : n >= 1}` for an integer `β >= 2`.
    IntegerMultiple(u64),
    /// `S = {⌊pn/q⌋ : n >= 1}` with `p/q > 1` in lowest terms.
    RationalBeatty { p: u64, q: u64 },
    /// `S` is the set of positive evil numbers.
    Evil,
    /// A finite prefix followed by a periodic tail.
    Explicit(ExplicitColoring),
}

/// An irrational Beatty slope with its complement and reciprocal cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BeattySlope {
    beta: QuadraticIrrational,
    alpha: QuadraticIrrational,
    inverse: QuadraticIrrational,
}

impl BeattySlope {
    pub fn new(beta: QuadraticIrrational) -> Result<Self> {
        let alpha = beta.complement_slope()?;
        let inverse = beta.recip()?;
        Ok(Self {
            beta,
            alpha,
            inverse,
        })
    }

    pub fn beta(&self) -> &QuadraticIrrational {
        &self.beta
    }

    /// The complementary slope `α` with `1/α + 1/β = 1`.
    pub fn alpha(&self) -> &QuadraticIrrational {
        &self.alpha
    }

    /// The unique `n` that could satisfy `⌊βn⌋ = m`.
    fn candidate_index(&self, m: &BigUint) -> BigInt {
        self.inverse.floor_mul(&(m + 1u32))
    }

    fn contains(&self, m: &BigUint) -> bool {
        let n = self.candidate_index(m);
        match n.to_biguint() {
            Some(n) if !n.is_zero() => self.beta.floor_mul(&n) == BigInt::from(m.clone()),
            _ => false,
        }
    }
}

/// `m ∈ {⌊βn⌋ : n >= 1}`, decided exactly.
pub fn beatty_membership(beta: &QuadraticIrrational, m: &BigUint) -> Result<bool> {
    Ok(BeattySlope::new(beta.clone())?.contains(m))
}

/// Prefix-plus-period coloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitColoring {
    prefix: Vec<Color>,
    period: Vec<Color>,
}

impl ExplicitColoring {
    pub fn new(prefix: Vec<Color>, period: Vec<Color>) -> Result<Self> {
        if period.is_empty() {
            return Err(domain("explicit coloring needs a period of length >= 1"));
        }
        Ok(Self { prefix, period })
    }

    pub fn prefix(&self) -> &[Color] {
        &self.prefix
    }

    pub fn period(&self) -> &[Color] {
        &self.period
    }

    fn color(&self, level: &BigUint) -> Color {
        let len = self.prefix.len();
        match level.to_usize() {
            Some(m) if m <= len => self.prefix[m - 1],
            _ => {
                let offset = (level - 1u32 - len) % self.period.len();
                self.period[offset.to_usize().expect("offset below period length")]
            }
        }
    }

    fn count_through(&self, color: Color, m: &BigUint) -> BigUint {
        let len = self.prefix.len();
        let in_prefix = |upto: usize| self.prefix[..upto].iter().filter(|&&c| c == color).count();
        if let Some(m) = m.to_usize().filter(|&m| m <= len) {
            return BigUint::from(in_prefix(m));
        }
        let per_period = self.period.iter().filter(|&&c| c == color).count();
        let (full, rem) = (m - len).div_rem(&BigUint::from(self.period.len()));
        let rem = rem.to_usize().expect("remainder below period length");
        let partial = self.period[..rem].iter().filter(|&&c| c == color).count();
        BigUint::from(in_prefix(len)) + full * per_period + partial
    }

    fn nth(&self, color: Color, i: &BigUint) -> Result<BigUint> {
        let mut seen = 0usize;
        for (idx, &c) in self.prefix.iter().enumerate() {
            if c == color {
                seen += 1;
                if BigUint::from(seen) == *i {
                    return Ok(BigUint::from(idx + 1));
                }
            }
        }
        let positions: Vec<usize> = self
            .period
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(idx, _)| idx + 1)
            .collect();
        if positions.is_empty() {
            return Err(Error::Unavailable(format!(
                "explicit coloring has only {seen} {} levels",
                color.name()
            )));
        }
        let remaining = i - seen - 1u32;
        let (full, k) = remaining.div_rem(&BigUint::from(positions.len()));
        let k = k.to_usize().expect("index below period count");
        Ok(BigUint::from(self.prefix.len()) + full * self.period.len() + positions[k])
    }
}

impl ColoringScheme {
    pub fn beatty(beta: QuadraticIrrational) -> Result<Self> {
        Ok(Self::Beatty(BeattySlope::new(beta)?))
    }

    pub fn integer(beta: u64) -> Result<Self> {
        if beta < 2 {
            return Err(domain(format!("integer slope must be >= 2, got {beta}")));
        }
        Ok(Self::IntegerMultiple(beta))
    }

    pub fn rational(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(domain(format!("rational slope {p}/{q} must exceed 1")));
        }
        let g = p.gcd(&q);
        Ok(Self::RationalBeatty { p: p / g, q: q / g })
    }

    pub fn explicit(prefix: Vec<Color>, period: Vec<Color>) -> Result<Self> {
        Ok(Self::Explicit(ExplicitColoring::new(prefix, period)?))
    }

    /// Parses the `R`/`G` string form of an explicit coloring.
    pub fn explicit_from_str(prefix: &str, period: &str) -> Result<Self> {
        Self::explicit(parse_colors(prefix)?, parse_colors(period)?)
    }

    pub fn all_red() -> Self {
        Self::explicit(Vec::new(), vec![Color::Red]).expect("valid")
    }

    pub fn all_green() -> Self {
        Self::explicit(Vec::new(), vec![Color::Green]).expect("valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scheme serializes")
    }

    /// Short stable identifier: the leading bytes of the SHA-256 of the
    /// canonical JSON encoding.
    pub fn id(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest[..6].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Color of a positive level.
    pub fn color(&self, level: &BigUint) -> Result<Color> {
        if level.is_zero() {
            return Err(domain("levels start at 1"));
        }
        let red = match self {
            Self::Beatty(slope) => slope.contains(level),
            Self::IntegerMultiple(beta) => (level % *beta).is_zero(),
            Self::RationalBeatty { .. } => {
                self.count_through(Color::Red, level)
                    > self.count_through(Color::Red, &(level - 1u32))
            }
            Self::Evil => is_evil(level),
            Self::Explicit(explicit) => return Ok(explicit.color(level)),
        };
        Ok(Color::from_red(red))
    }

    pub fn color_u64(&self, level: u64) -> Result<Color> {
        self.color(&BigUint::from(level))
    }

    /// Colors of levels `0..=upto`. Entry 0 stands for an empty heap and is
    /// reported green, since no height-0 heap can be red.
    pub fn colors_upto(&self, upto: u64) -> Vec<Color> {
        let len = usize::try_from(upto).expect("height fits in memory") + 1;
        match self {
            Self::Evil => (0..=upto)
                .map(|m| Color::from_red(m > 0 && is_evil(&m)))
                .collect(),
            Self::Explicit(explicit) => std::iter::once(Color::Green)
                .chain((1..=upto).map(|m| explicit.color(&BigUint::from(m))))
                .collect(),
            _ => {
                let mut colors = vec![Color::Green; len];
                let mut i = BigUint::one();
                loop {
                    let level = self.nth(Color::Red, &i).expect("sequence schemes are infinite");
                    match level.to_u64() {
                        Some(l) if l <= upto => colors[l as usize] = Color::Red,
                        _ => break,
                    }
                    i += 1u32;
                }
                colors
            }
        }
    }

    /// Number of levels in `1..=m` with the given color.
    pub fn count_through(&self, color: Color, m: &BigUint) -> BigUint {
        let reds = match self {
            Self::Beatty(slope) => slope
                .candidate_index(m)
                .to_biguint()
                .unwrap_or_default(),
            Self::IntegerMultiple(beta) => m / *beta,
            Self::RationalBeatty { p, q } => {
                // #{n >= 1 : pn < q(m + 1)}
                let bound: BigUint = (m + 1u32) * *q - 1u32;
                bound / *p
            }
            Self::Evil => evil_count_through(m) - 1u32,
            Self::Explicit(explicit) => return explicit.count_through(color, m),
        };
        match color {
            Color::Red => reds,
            Color::Green => m - reds,
        }
    }

    /// The `i`-th smallest level of the given color, `i >= 1`.
    pub fn nth(&self, color: Color, i: &BigUint) -> Result<BigUint> {
        if i.is_zero() {
            return Err(domain("level indices start at 1"));
        }
        let level = match (self, color) {
            (Self::Beatty(slope), Color::Red) => slope.beta.floor_mul(i),
            (Self::Beatty(slope), Color::Green) => slope.alpha.floor_mul(i),
            (Self::IntegerMultiple(beta), Color::Red) => return Ok(i * *beta),
            (Self::IntegerMultiple(beta), Color::Green) => {
                return Ok(i + (i - 1u32) / (*beta - 1));
            }
            (Self::RationalBeatty { p, q }, Color::Red) => return Ok(i * *p / *q),
            (Self::RationalBeatty { .. }, Color::Green) => return Ok(self.search_nth(color, i)),
            (Self::Evil, Color::Red) => return Ok(nth_evil_from_zero(i)),
            (Self::Evil, Color::Green) => return Ok(nth_odious_from_zero(&(i - 1u32))),
            (Self::Explicit(explicit), _) => return explicit.nth(color, i),
        };
        Ok(level.to_biguint().expect("positive slope gives positive floors"))
    }

    pub fn nth_red(&self, i: &BigUint) -> Result<BigUint> {
        self.nth(Color::Red, i)
    }

    pub fn nth_green(&self, i: &BigUint) -> Result<BigUint> {
        self.nth(Color::Green, i)
    }

    /// Smallest `m` with `count_through(color, m) >= i`; the caller
    /// guarantees the color is unbounded.
    fn search_nth(&self, color: Color, i: &BigUint) -> BigUint {
        let mut hi = i.clone();
        while self.count_through(color, &hi) < *i {
            hi <<= 1;
        }
        let mut lo = i.clone();
        while lo < hi {
            let mid: BigUint = (&lo + &hi) >> 1;
            if self.count_through(color, &mid) >= *i {
                hi = mid;
            } else {
                lo = mid + 1u32;
            }
        }
        lo
    }

    /// Human-readable description.
    pub fn label(&self) -> String {
        match self {
            Self::Beatty(slope) => format!("beatty {}", slope.beta),
            Self::IntegerMultiple(beta) => format!("integer {beta}"),
            Self::RationalBeatty { p, q } => format!("rational {p}/{q}"),
            Self::Evil => "evil".to_string(),
            Self::Explicit(e) => format!(
                "explicit {}|{}",
                colors_to_string(&e.prefix),
                colors_to_string(&e.period)
            ),
        }
    }
}

impl fmt::Display for ColoringScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn parse_colors(text: &str) -> Result<Vec<Color>> {
    text.chars()
        .map(|c| match c {
            'R' | 'r' => Ok(Color::Red),
            'G' | 'g' => Ok(Color::Green),
            other => Err(Error::Parse(format!("unexpected color {other:?}, use R or G"))),
        })
        .collect()
}

pub fn colors_to_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.letter()).collect()
}

/// Wire form of [`ColoringScheme`].
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SchemeRepr {
    Beatty {
        p: JsonInt,
        q: JsonInt,
        d: JsonInt,
        r: JsonInt,
    },
    Integer {
        beta: u64,
    },
    Rational {
        p: u64,
        q: u64,
    },
    Evil,
    Explicit {
        prefix: String,
        period: String,
    },
}

impl TryFrom<SchemeRepr> for ColoringScheme {
    type Error = Error;

    fn try_from(repr: SchemeRepr) -> Result<Self> {
        match repr {
            SchemeRepr::Beatty { p, q, d, r } => {
                Self::beatty(QuadraticIrrational::new(p.0, q.0, d.0, r.0)?)
            }
            SchemeRepr::Integer { beta } => Self::integer(beta),
            SchemeRepr::Rational { p, q } => Self::rational(p, q),
            SchemeRepr::Evil => Ok(Self::Evil),
            SchemeRepr::Explicit { prefix, period } => Self::explicit_from_str(&prefix, &period),
        }
    }
}

impl From<ColoringScheme> for SchemeRepr {
    fn from(scheme: ColoringScheme) -> Self {
        match scheme {
            ColoringScheme::Beatty(slope) => {
                let b = slope.beta;
                SchemeRepr::Beatty {
                    p: JsonInt(b.p().clone()),
                    q: JsonInt(b.q().clone()),
                    d: JsonInt(b.d().clone()),
                    r: JsonInt(b.r().clone()),
                }
            }
            ColoringScheme::IntegerMultiple(beta) => SchemeRepr::Integer { beta },
            ColoringScheme::RationalBeatty { p, q } => SchemeRepr::Rational { p, q },
            ColoringScheme::Evil => SchemeRepr::Evil,
            ColoringScheme::Explicit(e) => SchemeRepr::Explicit {
                prefix: colors_to_string(&e.prefix),
                period: colors_to_string(&e.period),
            },
        }
    }
}

/// A big integer encoded as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Signed(v) => Ok(JsonInt(v.into())),
            Raw::Unsigned(v) => Ok(JsonInt(v.into())),
            Raw::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map(JsonInt)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// Same encoding as [`JsonInt`] for non-negative values.
pub(crate) mod json_biguint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonInt(BigInt::from(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let JsonInt(v) = JsonInt::deserialize(d)?;
        if v.is_negative() {
            return Err(serde::de::Error::custom("expected a non-negative integer"));
        }
        Ok(v.to_biguint().expect("non-negative"))
    }
}
