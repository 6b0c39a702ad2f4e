//! Terminal game loop.

use std::io::{self, BufRead, Write};

use chromatic_nim::engine::{apply_move, is_green_position, top_color};
use chromatic_nim::strategies::winning_move;
use chromatic_nim::{ColoringScheme, Move, Oracle, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    Human,
    Engine,
}

/// Engine choice: a winning move if there is one, else lower the tallest
/// heap (first on ties) by one token.
pub fn engine_move(oracle: &mut Oracle, pos: &Position) -> Move {
    if let Ok(Some(mv)) = winning_move(oracle, pos) {
        return mv;
    }
    let (heap, &h) = pos
        .heaps
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|(_, &h)| h)
        .expect("at least one heap");
    Move::nim(heap, h - 1)
}

fn board(scheme: &ColoringScheme, pos: &Position) -> String {
    let mut out = String::new();
    for (i, &h) in pos.heaps.iter().enumerate() {
        let tokens: String = (1..=h).map(|l| top_color(scheme, l).letter()).collect();
        out.push_str(&format!("  heap {} ({h}): {tokens}\n", i + 1));
    }
    if is_green_position(scheme, pos) && !pos.is_terminal() {
        out.push_str("  green position: any move to smaller heights is allowed\n");
    }
    out
}

/// Reads `"<heap> <height>"` (1-based heap), `"green <h1>,<h2>,..."`,
/// `"hint"` or `"quit"`.
enum Command {
    Move(Move),
    Hint,
    Quit,
}

fn parse(line: &str) -> Result<Command, String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words[..] {
        ["quit"] | ["q"] => Ok(Command::Quit),
        ["hint"] => Ok(Command::Hint),
        ["green", heights] => Position::parse(heights)
            .map(|p| Command::Move(Move::green(p.heaps)))
            .map_err(|e| e.message),
        [heap, to] => {
            let heap: usize = heap.parse().map_err(|_| format!("bad heap number {heap:?}"))?;
            let to: u64 = to.parse().map_err(|_| format!("bad height {to:?}"))?;
            if heap == 0 {
                return Err("heaps are numbered from 1".into());
            }
            Ok(Command::Move(Move::nim(heap - 1, to)))
        }
        _ => Err("enter '<heap> <new height>', 'green h1,h2,...', 'hint' or 'quit'".into()),
    }
}

/// Plays one game and returns the winner, or `None` if the human quit or
/// input ran out.
pub fn play<R: BufRead, W: Write>(
    oracle: &mut Oracle,
    start: Position,
    first: Player,
    input: &mut R,
    out: &mut W,
) -> io::Result<Option<Player>> {
    let scheme = oracle.scheme().clone();
    let mut pos = start;
    let mut turn = first;
    loop {
        writeln!(out, "position {pos}")?;
        write!(out, "{}", board(&scheme, &pos))?;
        if pos.is_terminal() {
            let winner = match turn {
                Player::Human => Player::Engine,
                Player::Engine => Player::Human,
            };
            let name = if winner == Player::Human { "you win" } else { "engine wins" };
            writeln!(out, "game over: {name}")?;
            return Ok(Some(winner));
        }
        match turn {
            Player::Engine => {
                let mv = engine_move(oracle, &pos);
                writeln!(out, "engine plays {mv}")?;
                pos = apply_move(&scheme, &pos, &mv).expect("engine moves are legal");
                turn = Player::Human;
            }
            Player::Human => {
                write!(out, "your move> ")?;
                out.flush()?;
                let mut line = String::new();
                if input.read_line(&mut line)? == 0 {
                    writeln!(out)?;
                    return Ok(None);
                }
                match parse(line.trim()) {
                    Ok(Command::Quit) => return Ok(None),
                    Ok(Command::Hint) => match winning_move(oracle, &pos) {
                        Ok(Some(mv)) => writeln!(out, "hint: {mv}")?,
                        Ok(None) => writeln!(out, "hint: no winning move exists")?,
                        Err(e) => writeln!(out, "hint unavailable: {e}")?,
                    },
                    Ok(Command::Move(mv)) => match apply_move(&scheme, &pos, &mv) {
                        Ok(next) => {
                            pos = next;
                            turn = Player::Engine;
                        }
                        Err(e) => writeln!(out, "illegal move: {}", e.message)?,
                    },
                    Err(msg) => writeln!(out, "{msg}")?,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chromatic_nim::QuadraticIrrational;

    fn phi2() -> Oracle {
        Oracle::new(ColoringScheme::beatty(QuadraticIrrational::golden_ratio_squared()).unwrap())
    }

    fn run(start: &[u64], first: Player, input: &str) -> (Option<Player>, String) {
        let mut out = Vec::new();
        let winner = play(&mut phi2(), Position::new(start), first, &mut input.as_bytes(), &mut out).unwrap();
        (winner, String::from_utf8(out).unwrap())
    }

    #[test]
    fn engine_plays_unique_winning_move() {
        let (_, out) = run(&[4, 2], Player::Engine, "quit\n");
        assert!(out.contains("engine plays heap 1 -> 1"), "{out}");
        assert!(out.contains("position (1,2)"));
    }

    #[test]
    fn empty_start_is_over() {
        let (winner, out) = run(&[0, 0], Player::Human, "");
        assert_eq!(winner, Some(Player::Engine));
        assert!(out.contains("game over"));
    }

    #[test]
    fn illegal_green_move_reprompts() {
        let (winner, out) = run(&[1, 2], Player::Human, "green 0,0\n2 0\n");
        assert!(out.contains("illegal move"), "{out}");
        assert_eq!(winner, Some(Player::Engine));
    }

    #[test]
    fn fallback_lowers_tallest_heap() {
        let mut oracle = phi2();
        assert_eq!(engine_move(&mut oracle, &Position::new([1, 2])), Move::nim(1, 1));
        assert_eq!(engine_move(&mut oracle, &Position::new([3, 5])), Move::nim(1, 4));
    }
}
