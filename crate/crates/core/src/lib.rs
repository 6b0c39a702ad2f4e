//! S-Chromatic Nim.
//!
//! Nim on stacks of tokens whose levels are colored by a set `S` of red
//! levels. Nim moves are always legal; when every heap height is a green
//! level the position is green and any move to a componentwise smaller
//! position is legal.
//!
//! * [`colorings`]: schemes for `S`, exact Beatty arithmetic, evil numbers.
//! * [`engine`]: positions, move generation and validation.
//! * [`oracle`]: brute-force solver (status, winning moves, Grundy values).
//! * [`strategies`]: closed-form P-positions and winning-move advice.
//! * [`verify`]: cross-checks strategies against the oracle.

pub mod colorings;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod strategies;
pub mod verify;

pub use colorings::{Color, ColoringScheme, Dominance, DominationClass, QuadraticIrrational};
pub use engine::{Move, Position};
pub use error::{Error, Result};
pub use oracle::{GameStatus, Oracle};
pub use strategies::{PPositionPair, StrategyAdvice, StrategyKind};
