//! Two-pebble Ehrenfeucht–Fraïssé games on words.
//!
//! Samson (spoiler) places a pebble of one of the two pairs on either word and
//! Delilah (duplicator) answers with the mate on the other word. Delilah wins
//! if after every round the pebbles induce a partial isomorphism.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Var;
use crate::word::{ord, sucord, Word};

/// Default cap on memoized game configurations per call.
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::U => "u",
            Side::V => "v",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamsonMove {
    pub side: Side,
    pub pebble: Var,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameVerdict {
    pub delilah_wins: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_winning_samson_move: Option<SamsonMove>,
}

/// A game position.
///
/// `x` and `y` hold the paired placements `(position on u, position on v)`.
/// `blocks_left` counts the maximal same-side runs of moves Samson may still
/// start: with `m` blocks he can change words `m − 1` times. The first move
/// opens a block; `None` means unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub u: Word,
    pub v: Word,
    pub x: Option<(usize, usize)>,
    pub y: Option<(usize, usize)>,
    pub depth_left: usize,
    pub blocks_left: Option<usize>,
    pub last_side: Option<Side>,
    pub with_successor: bool,
}

impl GameConfig {
    /// The sentence game: no pebbles placed, unbounded switching.
    pub fn new(u: &Word, v: &Word, depth: usize, with_successor: bool) -> Self {
        GameConfig {
            u: u.clone(),
            v: v.clone(),
            x: None,
            y: None,
            depth_left: depth,
            blocks_left: None,
            last_side: None,
            with_successor,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, pair) in [("x", self.x), ("y", self.y)] {
            if let Some((i, j)) = pair {
                if i == 0 || i > self.u.len() || j == 0 || j > self.v.len() {
                    return Err(Error::precondition(format!("pebble {name} placed outside its word")));
                }
            }
        }
        if self.u.len() >= u16::MAX as usize || self.v.len() >= u16::MAX as usize {
            return Err(Error::precondition("words too long for the game solver"));
        }
        if self.depth_left > u8::MAX as usize {
            return Err(Error::precondition("game depth too large"));
        }
        Ok(())
    }
}

/// Whether the pebbles of `c` induce a partial isomorphism.
pub fn partial_iso(c: &GameConfig) -> bool {
    iso(c.u.letters(), c.v.letters(), pos(c.x), pos(c.y), c.with_successor)
}

fn pos(p: Option<(usize, usize)>) -> [u16; 2] {
    p.map_or([0, 0], |(i, j)| [i as u16, j as u16])
}

fn iso(u: &[char], v: &[char], x: [u16; 2], y: [u16; 2], suc: bool) -> bool {
    for p in [x, y] {
        if p[0] != 0 && u[p[0] as usize - 1] != v[p[1] as usize - 1] {
            return false;
        }
    }
    if x[0] != 0 && y[0] != 0 {
        let (xu, yu, xv, yv) = (x[0] as usize, y[0] as usize, x[1] as usize, y[1] as usize);
        if suc {
            return sucord(xu, yu) == sucord(xv, yv);
        }
        return ord(xu, yu) == ord(xv, yv);
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    x: [u16; 2],
    y: [u16; 2],
    depth: u8,
    blocks: u8,
    last: u8,
}

struct Search<'a> {
    u: &'a [char],
    v: &'a [char],
    suc: bool,
    memo: HashMap<Key, bool>,
    max_states: usize,
}

impl Search<'_> {
    fn word(&self, side: Side) -> &[char] {
        match side {
            Side::U => self.u,
            Side::V => self.v,
        }
    }

    fn place(pair: [u16; 2], side: Side, samson: u16, delilah: u16) -> [u16; 2] {
        let mut pair = pair;
        match side {
            Side::U => {
                pair[0] = samson;
                pair[1] = delilah;
            }
            Side::V => {
                pair[1] = samson;
                pair[0] = delilah;
            }
        }
        pair
    }

    /// Samson moves allowed from `key`, with the block budget left after each.
    fn sides(key: &Key, start: Option<Side>) -> Vec<(Side, u8)> {
        let mut out = Vec::with_capacity(2);
        for side in [Side::U, Side::V] {
            if start.is_some_and(|s| s != side) {
                continue;
            }
            let same = match key.last {
                1 => side == Side::U,
                2 => side == Side::V,
                _ => false,
            };
            if same {
                out.push((side, key.blocks));
            } else if key.blocks > 0 {
                out.push((side, key.blocks - 1));
            }
        }
        out
    }

    /// Does Delilah win from `key`? Also returns Samson's first winning move.
    fn solve(&mut self, key: Key, start: Option<Side>) -> Result<(bool, Option<SamsonMove>)> {
        if key.depth == 0 {
            return Ok((true, None));
        }
        for (side, blocks) in Self::sides(&key, start) {
            let last = match side {
                Side::U => 1,
                Side::V => 2,
            };
            for pebble in [Var::X, Var::Y] {
                for i in 1..=self.word(side).len() as u16 {
                    let mut answered = false;
                    for j in 1..=self.word(side.other()).len() as u16 {
                        let (x, y) = match pebble {
                            Var::X => (Self::place(key.x, side, i, j), key.y),
                            Var::Y => (key.x, Self::place(key.y, side, i, j)),
                        };
                        if !iso(self.u, self.v, x, y, self.suc) {
                            continue;
                        }
                        let next = Key {
                            x,
                            y,
                            depth: key.depth - 1,
                            blocks: blocks.min(key.depth - 1),
                            last,
                        };
                        if self.delilah_wins(next)? {
                            answered = true;
                            break;
                        }
                    }
                    if !answered {
                        let mv = SamsonMove {
                            side,
                            pebble,
                            position: i as usize,
                        };
                        return Ok((false, Some(mv)));
                    }
                }
            }
        }
        Ok((true, None))
    }

    fn delilah_wins(&mut self, key: Key) -> Result<bool> {
        if let Some(&won) = self.memo.get(&key) {
            return Ok(won);
        }
        let (won, _) = self.solve(key, None)?;
        if self.memo.len() >= self.max_states {
            return Err(Error::Resource {
                what: "game configurations",
                cap: self.max_states as u64,
            });
        }
        self.memo.insert(key, won);
        Ok(won)
    }
}

/// Game solver with a configurable memo cap.
#[derive(Debug, Clone, Copy)]
pub struct GameSolver {
    pub max_states: usize,
}

impl Default for GameSolver {
    fn default() -> Self {
        GameSolver {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl GameSolver {
    /// Plays from `config`; `start_side`, if given, fixes the side of Samson's first move.
    pub fn solve(&self, config: &GameConfig, start_side: Option<Side>) -> Result<GameVerdict> {
        config.validate()?;
        if !partial_iso(config) {
            return Ok(GameVerdict {
                delilah_wins: false,
                first_winning_samson_move: None,
            });
        }
        let depth = config.depth_left;
        let blocks = config.blocks_left.unwrap_or(depth).min(depth);
        let key = Key {
            x: pos(config.x),
            y: pos(config.y),
            depth: depth as u8,
            blocks: blocks as u8,
            last: match config.last_side {
                None => 0,
                Some(Side::U) => 1,
                Some(Side::V) => 2,
            },
        };
        let mut search = Search {
            u: config.u.letters(),
            v: config.v.letters(),
            suc: config.with_successor,
            memo: HashMap::new(),
            max_states: self.max_states,
        };
        let (delilah_wins, first) = search.solve(key, start_side)?;
        Ok(GameVerdict {
            delilah_wins,
            first_winning_samson_move: first,
        })
    }
}

/// `u ≡²_n v` (over `<`, or `<, suc`) by the `n`-move game.
pub fn game_equiv(u: &Word, v: &Word, n: usize, with_successor: bool) -> Result<GameVerdict> {
    GameSolver::default().solve(&GameConfig::new(u, v, n, with_successor), None)
}

/// The `n`-move game in which Samson may change words at most `m − 1` times.
pub fn game_equiv_alt(
    u: &Word,
    v: &Word,
    m: usize,
    n: usize,
    with_successor: bool,
    start_side: Option<Side>,
) -> Result<GameVerdict> {
    if m > n {
        return Err(Error::precondition(format!("alternation bound {m} exceeds depth {n}")));
    }
    let mut config = GameConfig::new(u, v, n, with_successor);
    config.blocks_left = Some(m);
    GameSolver::default().solve(&config, start_side)
}

/// Parameters of a game that starts with both pebble pairs already placed.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeneralGame {
    pub n: usize,
    pub m: Option<usize>,
    pub start_side: Option<Side>,
    pub with_successor: bool,
}

/// The game on `(u, i₁, i₂)` and `(v, j₁, j₂)`: x on `i₁/j₁`, y on `i₂/j₂`.
pub fn game_equiv_general(
    u: &Word,
    (i1, i2): (usize, usize),
    v: &Word,
    (j1, j2): (usize, usize),
    game: GeneralGame,
) -> Result<GameVerdict> {
    if game.m.is_some_and(|m| m > game.n) {
        return Err(Error::precondition("alternation bound exceeds depth"));
    }
    let config = GameConfig {
        u: u.clone(),
        v: v.clone(),
        x: Some((i1, j1)),
        y: Some((i2, j2)),
        depth_left: game.n,
        blocks_left: game.m,
        last_side: None,
        with_successor: game.with_successor,
    };
    GameSolver::default().solve(&config, game.start_side)
}
