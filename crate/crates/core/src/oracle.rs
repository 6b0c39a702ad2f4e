//! Brute-force solver by backward induction.
//!
//! Statuses are computed bottom-up over the cube `[0, H]^k` in lexicographic
//! order. Every option of a position is componentwise smaller, hence
//! lexicographically earlier, so it is already solved when needed.

use serde::{Deserialize, Serialize};

use crate::colorings::{Color, ColoringScheme};
use crate::engine::{self, DominatedTargets, Move, Position, DEFAULT_MAX_HEIGHT};
use crate::error::{Error, Result};

/// Normal-play outcome class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameStatus {
    /// The previous player (the one who just moved) wins.
    P,
    /// The next player to move wins.
    N,
}

impl std::fmt::Display for GameStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GameStatus::P => "P",
            GameStatus::N => "N",
        })
    }
}

/// Resource bounds for the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest heap height accepted.
    pub max_height: u64,
    /// Largest number of table cells, `(H + 1)^k`.
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_height: DEFAULT_MAX_HEIGHT,
            max_cells: 1 << 26,
        }
    }
}

/// Shape of the cube `[0, side - 1]^k` and its lexicographic indexing.
#[derive(Clone, Debug)]
struct Cube {
    side: usize,
    strides: Vec<usize>,
    cells: usize,
}

impl Cube {
    fn new(k: usize, height: u64, limits: &Limits) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("positions need at least one heap".into()));
        }
        if height > limits.max_height {
            return Err(Error::Resource(format!(
                "height {height} exceeds the limit {}",
                limits.max_height
            )));
        }
        let side = usize::try_from(height + 1)
            .map_err(|_| Error::Resource(format!("height {height} too large")))?;
        let cells = u32::try_from(k)
            .ok()
            .and_then(|k| side.checked_pow(k))
            .filter(|&c| c <= limits.max_cells)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "{k} heaps up to height {height} exceed {} table cells",
                    limits.max_cells
                ))
            })?;
        let mut strides = vec![1usize; k];
        for a in (0..k.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * side;
        }
        Ok(Self {
            side,
            strides,
            cells,
        })
    }

    fn k(&self) -> usize {
        self.strides.len()
    }

    fn height(&self) -> u64 {
        self.side as u64 - 1
    }

    fn index(&self, heaps: &[u64]) -> usize {
        heaps
            .iter()
            .zip(&self.strides)
            .map(|(&h, &s)| h as usize * s)
            .sum()
    }

    fn covers(&self, pos: &Position) -> bool {
        pos.arity() == self.k() && pos.max_height() <= self.height()
    }

    /// Visits every cell in index order with its coordinates.
    fn for_each(&self, mut visit: impl FnMut(usize, &[u64])) {
        let mut coords = vec![0u64; self.k()];
        for idx in 0..self.cells {
            visit(idx, &coords);
            for c in coords.iter_mut().rev() {
                if (*c as usize) + 1 < self.side {
                    *c += 1;
                    break;
                }
                *c = 0;
            }
        }
    }
}

/// Solved statuses for every position in a cube.
#[derive(Clone, Debug)]
pub struct StatusTable {
    cube: Cube,
    is_p: Vec<bool>,
}

impl StatusTable {
    /// Solves every `k`-heap position with heights at most `height`.
    pub fn build(scheme: &ColoringScheme, k: usize, height: u64, limits: &Limits) -> Result<Self> {
        let cube = Cube::new(k, height, limits)?;
        let green = green_levels(scheme, height);
        let mut is_p = vec![false; cube.cells];
        // bit a of line_has_p[base] is set once a P-position lies on the
        // axis-a line through base (the cell with coordinate a zeroed)
        let mut line_has_p = vec![0u64; cube.cells];
        let axis_bits = k.min(64);
        cube.for_each(|idx, coords| {
            let p = if coords.iter().all(|&h| h == 0) {
                true
            } else if coords.iter().all(|&h| green[h as usize]) {
                !DominatedTargets::new(coords).any(|t| is_p[cube.index(&t)])
            } else {
                !(0..k).any(|a| {
                    let base = idx - coords[a] as usize * cube.strides[a];
                    if a < axis_bits {
                        line_has_p[base] & (1 << a) != 0
                    } else {
                        (0..coords[a] as usize).any(|v| is_p[base + v * cube.strides[a]])
                    }
                })
            };
            if p {
                is_p[idx] = true;
                for a in 0..axis_bits {
                    line_has_p[idx - coords[a] as usize * cube.strides[a]] |= 1 << a;
                }
            }
        });
        Ok(Self { cube, is_p })
    }

    pub fn height(&self) -> u64 {
        self.cube.height()
    }

    pub fn arity(&self) -> usize {
        self.cube.k()
    }

    /// Status of a covered position.
    pub fn status(&self, pos: &Position) -> Option<GameStatus> {
        self.cube.covers(pos).then(|| {
            if self.is_p[self.cube.index(&pos.heaps)] {
                GameStatus::P
            } else {
                GameStatus::N
            }
        })
    }

    /// P-positions with every height at most `height`, in lexicographic order.
    pub fn p_positions(&self, height: u64) -> Vec<Position> {
        let mut out = Vec::new();
        self.cube.for_each(|idx, coords| {
            if self.is_p[idx] && coords.iter().all(|&h| h <= height) {
                out.push(Position::new(coords.to_vec()));
            }
        });
        out
    }
}

/// Grundy values for every position in a cube.
#[derive(Clone, Debug)]
pub struct GrundyTable {
    cube: Cube,
    values: Vec<u64>,
}

impl GrundyTable {
    pub fn build(scheme: &ColoringScheme, k: usize, height: u64, limits: &Limits) -> Result<Self> {
        let cube = Cube::new(k, height, limits)?;
        let green = green_levels(scheme, height);
        let mut values = vec![0u64; cube.cells];
        let mut options = Vec::new();
        cube.for_each(|idx, coords| {
            options.clear();
            if coords.iter().all(|&h| green[h as usize]) {
                options.extend(DominatedTargets::new(coords).map(|t| values[cube.index(&t)]));
            } else {
                for (a, &h) in coords.iter().enumerate() {
                    let base = idx - h as usize * cube.strides[a];
                    options.extend((0..h as usize).map(|v| values[base + v * cube.strides[a]]));
                }
            }
            values[idx] = crate::colorings::mex(options.iter().copied());
        });
        Ok(Self { cube, values })
    }

    pub fn grundy(&self, pos: &Position) -> Option<u64> {
        self.cube
            .covers(pos)
            .then(|| self.values[self.cube.index(&pos.heaps)])
    }
}

fn green_levels(scheme: &ColoringScheme, height: u64) -> Vec<bool> {
    scheme
        .colors_upto(height)
        .into_iter()
        .map(|c| c == Color::Green)
        .collect()
}

/// Caching front end over [`StatusTable`] and [`GrundyTable`] for one scheme.
///
/// Tables are rebuilt on demand when a query falls outside the cached cube.
#[derive(Clone, Debug)]
pub struct Oracle {
    scheme: ColoringScheme,
    limits: Limits,
    status: Option<StatusTable>,
    grundy: Option<GrundyTable>,
}

impl Oracle {
    pub fn new(scheme: ColoringScheme) -> Self {
        Self::with_limits(scheme, Limits::default())
    }

    pub fn with_limits(scheme: ColoringScheme, limits: Limits) -> Self {
        Self {
            scheme,
            limits,
            status: None,
            grundy: None,
        }
    }

    pub fn scheme(&self) -> &ColoringScheme {
        &self.scheme
    }

    /// Ensures the status table covers `k` heaps up to `height`.
    pub fn table(&mut self, k: usize, height: u64) -> Result<&StatusTable> {
        let fits = self
            .status
            .as_ref()
            .is_some_and(|t| t.arity() == k && t.height() >= height);
        if !fits {
            self.status = Some(StatusTable::build(&self.scheme, k, height, &self.limits)?);
        }
        Ok(self.status.as_ref().expect("table present"))
    }

    pub fn status(&mut self, pos: &Position) -> Result<GameStatus> {
        let table = self.table(pos.arity(), pos.max_height())?;
        Ok(table.status(pos).expect("covered"))
    }

    /// Legal moves to P-positions, in [`engine::legal_moves`] order.
    pub fn winning_moves(&mut self, pos: &Position) -> Result<Vec<Move>> {
        let scheme = self.scheme.clone();
        let table = self.table(pos.arity(), pos.max_height())?;
        Ok(engine::legal_moves(&scheme, pos)
            .into_iter()
            .filter(|mv| {
                let next = engine::apply_move(&scheme, pos, mv).expect("generated moves are legal");
                table.status(&next) == Some(GameStatus::P)
            })
            .collect())
    }

    pub fn grundy(&mut self, pos: &Position) -> Result<u64> {
        let fits = self.grundy.as_ref().is_some_and(|t| {
            t.cube.k() == pos.arity() && t.cube.height() >= pos.max_height()
        });
        if !fits {
            self.grundy = Some(GrundyTable::build(
                &self.scheme,
                pos.arity(),
                pos.max_height(),
                &self.limits,
            )?);
        }
        Ok(self
            .grundy
            .as_ref()
            .and_then(|t| t.grundy(pos))
            .expect("covered"))
    }

    /// All P-positions of `k` heaps with heights at most `height`, sorted
    /// lexicographically.
    pub fn p_positions_upto(&mut self, height: u64, k: usize) -> Result<Vec<Position>> {
        Ok(self.table(k, height)?.p_positions(height))
    }
}

/// CSV table `scheme_id,a,b` of 2-heap positions.
pub fn positions_to_csv(scheme_id: &str, positions: &[Position]) -> Result<String> {
    let mut out = String::from("scheme_id,a,b\n");
    for pos in positions {
        let [a, b] = pos.heaps[..] else {
            return Err(Error::Domain(format!("CSV export needs 2 heaps, got {pos}")));
        };
        out.push_str(&format!("{scheme_id},{a},{b}\n"));
    }
    Ok(out)
}

/// JSON array of positions.
pub fn positions_to_json(positions: &[Position]) -> String {
    serde_json::to_string(positions).expect("positions serialize")
}
