//! Hot-seat play at one terminal.

use std::io::{BufRead, Write};

use mum_core::{ConsolidationPolicy, MoveAction, Position};

const HELP: &str = "commands:
  r I A   subtract A from heap I (0-based, heaps shown sorted)
  c A     consolidate all heaps, then subtract A
  h       hint
  e       let the engine move
  m       list legal moves
  q       quit";

fn parse_move(line: &str) -> Option<MoveAction> {
    let mut it = line.split_whitespace();
    let cmd = it.next()?;
    let nums: Vec<u64> = it.map(|t| t.parse().ok()).collect::<Option<_>>()?;
    match (cmd, nums.as_slice()) {
        ("r", &[i, a]) => Some(MoveAction::Reduce {
            heap_index: usize::try_from(i).ok()?,
            amount: a,
        }),
        ("c", &[a]) => Some(MoveAction::ConsolidateThenReduce { amount: a }),
        _ => None,
    }
}

/// Runs until someone cannot move or input ends. Returns the winner
/// (1 or 2), or `None` if the game was abandoned.
pub fn run<R: BufRead, W: Write>(
    mut pos: Position,
    policy: ConsolidationPolicy,
    input: R,
    out: &mut W,
) -> std::io::Result<Option<u8>> {
    let mut player = 1u8;
    let mut lines = input.lines();
    writeln!(out, "{HELP}")?;
    loop {
        if pos.legal_moves(policy).is_empty() {
            let winner = 3 - player;
            writeln!(out, "{pos}\nplayer {player} cannot move; player {winner} wins")?;
            return Ok(Some(winner));
        }
        writeln!(out, "{pos}  product {}", pos.analyze_with_budget(policy, 0).product)?;
        write!(out, "player {player}> ")?;
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out)?;
            return Ok(None);
        };
        let line = line.trim();
        let mv = match line {
            "" => continue,
            "q" => return Ok(None),
            "h" => {
                let hint = pos.hint(policy);
                match hint.mv {
                    Some(mv) => writeln!(out, "hint: {mv} ({})", hint.explanation.text())?,
                    None => writeln!(out, "hint: {}", hint.explanation.text())?,
                }
                continue;
            }
            "m" => {
                for mv in pos.legal_moves(policy) {
                    writeln!(out, "  {mv}")?;
                }
                continue;
            }
            "e" => pos.engine_move(policy).expect("position has legal moves"),
            other => match parse_move(other) {
                Some(mv) => mv,
                None => {
                    writeln!(out, "unrecognized input; {HELP}")?;
                    continue;
                }
            },
        };
        match pos.apply_move(mv, policy) {
            Ok(next) => {
                writeln!(out, "player {player}: {mv}")?;
                pos = next;
                player = 3 - player;
            }
            Err(e) => writeln!(out, "{e}")?,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mum_core::{Modulus, NumPosition};

    fn start(heaps: &[u64]) -> Position {
        Position::Numeric(NumPosition::new(Modulus::new(5).unwrap(), heaps).unwrap())
    }

    #[test]
    fn parses_moves() {
        assert_eq!(parse_move("r 2 4"), Some(MoveAction::Reduce { heap_index: 2, amount: 4 }));
        assert_eq!(parse_move("c 2"), Some(MoveAction::ConsolidateThenReduce { amount: 2 }));
        assert_eq!(parse_move("r 2"), None);
        assert_eq!(parse_move("x 1 1"), None);
    }

    #[test]
    fn two_players_finish_a_game() {
        let mut out = Vec::new();
        let input = "h\nr 0 9\nr 0 1\n".as_bytes();
        let winner = run(start(&[2]), ConsolidationPolicy::StrandedOnly, input, &mut out).unwrap();
        assert_eq!(winner, Some(1));
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("hint: subtract 1 from heap #0"));
        assert!(text.contains("r < 5 violated"));
        assert!(text.contains("player 1 wins"));
    }

    #[test]
    fn engine_moves_on_request_and_eof_abandons() {
        let mut out = Vec::new();
        let winner = run(start(&[6, 6, 2]), ConsolidationPolicy::StrandedOnly, "e\n".as_bytes(), &mut out)
            .unwrap();
        assert_eq!(winner, None);
        assert!(String::from_utf8(out).unwrap().contains("[2, 3, 6] mod 5"));
    }
}
