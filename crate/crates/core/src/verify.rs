//! Cross-checks of the closed-form strategies against the brute-force oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colorings::{domination, Color, ColoringScheme, Dominance};
use crate::engine::{apply_move, Position};
use crate::error::Result;
use crate::oracle::{GameStatus, Oracle};
use crate::strategies::{
    green_dominated_advice, pairs_upto, red_dominated_advice, symmetrize, StrategyAdvice,
    StrategyKind,
};

/// One disagreement between a strategy and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub position: Position,
    pub expected: GameStatus,
    pub got: GameStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Outcome of comparing one strategy with the oracle up to a height.
///
/// Equality ignores `elapsed_ms`, which is the only non-deterministic field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scheme_id: String,
    pub scheme: ColoringScheme,
    pub strategy: StrategyKind,
    pub horizon: u64,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        (
            &self.scheme_id,
            &self.scheme,
            self.strategy,
            self.horizon,
            self.checked,
            &self.mismatches,
            &self.error,
        ) == (
            &other.scheme_id,
            &other.scheme,
            other.strategy,
            other.horizon,
            other.checked,
            &other.mismatches,
            &other.error,
        )
    }
}

impl Eq for VerificationReport {}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Multi-line human-readable form, listing at most `limit` mismatches.
    pub fn summary(&self, limit: usize) -> String {
        let mut out = self.to_string();
        for m in self.mismatches.iter().take(limit) {
            out.push_str(&format!("\n  {}: expected {}, got {}", m.position, m.expected, m.got));
            if let Some(detail) = &m.detail {
                out.push_str(&format!(" ({detail})"));
            }
        }
        if self.mismatches.len() > limit {
            out.push_str(&format!("\n  ... {} more", self.mismatches.len() - limit));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} [{}] strategy={} H={} checked={} mismatches={} ({} ms)",
            self.scheme, self.scheme_id, self.strategy, self.horizon, self.checked,
            self.mismatches.len(), self.elapsed_ms
        )?;
        if let Some(err) = &self.error {
            write!(f, " error: {err}")?;
        }
        Ok(())
    }
}

/// Compare the strategy's P-set, and for the dominated strategies its move
/// advice, with the oracle on every 2-heap position of height at most `horizon`.
pub fn verify(scheme: &ColoringScheme, strategy: StrategyKind, horizon: u64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        scheme_id: scheme.id(),
        scheme: scheme.clone(),
        strategy,
        horizon,
        checked: 0,
        mismatches: Vec::new(),
        error: None,
        elapsed_ms: 0,
    };
    if let Err(e) = compare(scheme, strategy, horizon, &mut report) {
        report.error = Some(e.to_string());
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn compare(
    scheme: &ColoringScheme,
    strategy: StrategyKind,
    horizon: u64,
    report: &mut VerificationReport,
) -> Result<()> {
    let claimed: BTreeSet<(u64, u64)> = symmetrize(&pairs_upto(scheme, strategy, horizon)?, horizon);
    let advisor: Option<fn(&ColoringScheme, &Position) -> Result<StrategyAdvice>> = match strategy {
        StrategyKind::GreenDominated => Some(green_dominated_advice),
        StrategyKind::RedDominated => Some(red_dominated_advice),
        _ => None,
    };
    let mut oracle = Oracle::new(scheme.clone());
    oracle.table(2, horizon)?;
    for x in 0..=horizon {
        for y in 0..=horizon {
            let pos = Position::new([x, y]);
            let expected = oracle.status(&pos)?;
            let got = if claimed.contains(&(x, y)) {
                GameStatus::P
            } else {
                GameStatus::N
            };
            report.checked += 1;
            if expected != got {
                report.mismatches.push(Mismatch {
                    position: pos.clone(),
                    expected,
                    got,
                    detail: Some("P-set".into()),
                });
            }
            if let Some(advise) = advisor {
                check_advice(scheme, &mut oracle, &pos, expected, advise(scheme, &pos)?, report)?;
            }
        }
    }
    Ok(())
}

fn check_advice(
    scheme: &ColoringScheme,
    oracle: &mut Oracle,
    pos: &Position,
    expected: GameStatus,
    advice: StrategyAdvice,
    report: &mut VerificationReport,
) -> Result<()> {
    if advice.status != expected {
        report.mismatches.push(Mismatch {
            position: pos.clone(),
            expected,
            got: advice.status,
            detail: Some("advice status".into()),
        });
    }
    if let Some(mv) = advice.mv {
        let landed = match apply_move(scheme, pos, &mv) {
            Ok(next) => oracle.status(&next)?,
            Err(e) => {
                report.mismatches.push(Mismatch {
                    position: pos.clone(),
                    expected: GameStatus::P,
                    got: GameStatus::N,
                    detail: Some(format!("illegal advised move {mv}: {}", e.message)),
                });
                return Ok(());
            }
        };
        if landed != GameStatus::P {
            report.mismatches.push(Mismatch {
                position: pos.clone(),
                expected: GameStatus::P,
                got: landed,
                detail: Some(format!("advised move {mv} lands on an N-position")),
            });
        }
    }
    Ok(())
}

/// A random eventually periodic coloring whose first `horizon` levels are
/// dominated in the requested way. Red levels are drawn with a density
/// that favors the requested class.
pub fn random_dominated_scheme(rng: &mut impl Rng, class: Dominance, horizon: u64) -> ColoringScheme {
    let red_density = match class {
        Dominance::GreenDominated => 0.3,
        Dominance::RedDominated => 0.7,
        Dominance::Neither => 0.5,
    };
    loop {
        let prefix_len = rng.gen_range(0..=8);
        let period_len = rng.gen_range(4..=16);
        let mut draw = |len: usize| -> Vec<Color> {
            (0..len).map(|_| Color::from_red(rng.gen_bool(red_density))).collect()
        };
        let (prefix, period) = (draw(prefix_len), draw(period_len));
        let scheme = ColoringScheme::explicit(prefix, period).expect("period is non-empty");
        let kind = domination(&scheme, horizon.max(1)).expect("horizon >= 1").kind;
        if kind == class {
            return scheme;
        }
    }
}

/// Verify `count` random schemes of one domination class with the
/// matching strategy.
pub fn fuzz_class(class: Dominance, count: usize, horizon: u64, seed: u64) -> Vec<VerificationReport> {
    let strategy = match class {
        Dominance::GreenDominated => StrategyKind::GreenDominated,
        Dominance::RedDominated => StrategyKind::RedDominated,
        Dominance::Neither => StrategyKind::Oracle,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let scheme = random_dominated_scheme(&mut rng, class, horizon);
            verify(&scheme, strategy, horizon)
        })
        .collect()
}

/// Verify `count` random dominated schemes, each of a randomly chosen class.
pub fn fuzz_dominated(count: usize, horizon: u64, seed: u64) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (class, strategy) = if rng.gen_bool(0.5) {
                (Dominance::GreenDominated, StrategyKind::GreenDominated)
            } else {
                (Dominance::RedDominated, StrategyKind::RedDominated)
            };
            let scheme = random_dominated_scheme(&mut rng, class, horizon);
            verify(&scheme, strategy, horizon)
        })
        .collect()
}
