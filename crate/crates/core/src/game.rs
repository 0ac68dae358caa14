//! Rulesets, positions and move generation for two-pile take-away games.
//!
//! Three families are supported: two-pile Nim, Wythoff Nim (Nim plus equal
//! removal from both piles) and (p,q)-GDWN, which adds removal of `p·t`
//! tokens from one pile together with `q·t` from the other.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A pair of pile heights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    pub const fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    pub const fn reflect(self) -> Self {
        Position { x: self.y, y: self.x }
    }

    /// The same position with the smaller pile first.
    pub fn canonical(self) -> Self {
        canonical(self)
    }

    pub fn is_terminal(self) -> bool {
        self == Self::ORIGIN
    }
}

impl From<(u64, u64)> for Position {
    fn from((x, y): (u64, u64)) -> Self {
        Position { x, y }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Returns `(min(x,y), max(x,y))`.
pub fn canonical(pos: Position) -> Position {
    if pos.x <= pos.y {
        pos
    } else {
        pos.reflect()
    }
}

/// Tokens removed from each pile by a single move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub dx: u64,
    pub dy: u64,
}

impl Move {
    pub const fn new(dx: u64, dy: u64) -> Self {
        Move { dx, dy }
    }

    pub const fn reflect(self) -> Self {
        Move { dx: self.dy, dy: self.dx }
    }

    pub fn is_null(self) -> bool {
        self.dx == 0 && self.dy == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameSpecError {
    #[error("unknown game {0:?}; expected `nim`, `wythoff` or `gdwn:p,q`")]
    UnknownGame(String),
    #[error("invalid GDWN parameter {0:?}; expected a positive integer")]
    BadParameter(String),
    #[error("GDWN parameters {0:?} must be two comma-separated integers")]
    BadParameterList(String),
    #[error("GDWN requires 1 <= p < q, got p={p}, q={q}")]
    Unordered { p: u64, q: u64 },
    #[error("GDWN requires gcd(p, q) = 1, got p={p}, q={q}")]
    NotCoprime { p: u64, q: u64 },
}

/// Which ruleset governs move generation.
///
/// A `Gdwn` value can only be obtained through [`GameSpec::gdwn`] or parsing,
/// both of which enforce `1 <= p < q` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameSpec {
    Nim,
    Wythoff,
    Gdwn(Slope),
}

/// Coprime slope parameters of a GDWN ruleset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: u64,
    q: u64,
}

impl Slope {
    pub fn p(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }
}

impl GameSpec {
    pub fn gdwn(p: u64, q: u64) -> Result<Self, GameSpecError> {
        if p == 0 || p >= q {
            return Err(GameSpecError::Unordered { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(GameSpecError::NotCoprime { p, q });
        }
        Ok(GameSpec::Gdwn(Slope { p, q }))
    }

    /// The (p,q) parameters for GDWN, `None` for Nim and Wythoff.
    pub fn slope(self) -> Option<(u64, u64)> {
        match self {
            GameSpec::Gdwn(s) => Some((s.p, s.q)),
            _ => None,
        }
    }

    /// Whether `mv` belongs to one of this ruleset's move families,
    /// independently of the position it is played from.
    pub fn admits(self, mv: Move) -> bool {
        let Move { dx, dy } = mv;
        if mv.is_null() {
            return false;
        }
        if dx == 0 || dy == 0 {
            return true;
        }
        match self {
            GameSpec::Nim => false,
            GameSpec::Wythoff => dx == dy,
            GameSpec::Gdwn(Slope { p, q }) => {
                if dx == dy {
                    return true;
                }
                // With gcd(p,q) = 1 a match on the line invariant forces an
                // integral multiplier t.
                let (dx, dy, p, q) = (dx as u128, dy as u128, p as u128, q as u128);
                q * dx == p * dy || p * dx == q * dy
            }
        }
    }

    /// The move families of this ruleset as primitive steps; every legal
    /// move is a positive multiple of one of them.
    pub fn directions(self) -> &'static [Family] {
        match self {
            GameSpec::Nim => &[Family::Column, Family::Row],
            GameSpec::Wythoff => &[Family::Column, Family::Row, Family::Diagonal],
            GameSpec::Gdwn(_) => &[
                Family::Column,
                Family::Row,
                Family::Diagonal,
                Family::SlopePQ,
                Family::SlopeQP,
            ],
        }
    }

    /// Primitive step `(dx, dy)` of a family under this ruleset.
    pub fn step(self, family: Family) -> Move {
        let (p, q) = self.slope().unwrap_or((1, 1));
        match family {
            Family::Column => Move::new(0, 1),
            Family::Row => Move::new(1, 0),
            Family::Diagonal => Move::new(1, 1),
            Family::SlopePQ => Move::new(p, q),
            Family::SlopeQP => Move::new(q, p),
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::Nim => f.write_str("nim"),
            GameSpec::Wythoff => f.write_str("wythoff"),
            GameSpec::Gdwn(Slope { p, q }) => write!(f, "gdwn:{p},{q}"),
        }
    }
}

impl Serialize for GameSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GameSpec {
    type Err = GameSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "nim" => return Ok(GameSpec::Nim),
            "wythoff" => return Ok(GameSpec::Wythoff),
            _ => {}
        }
        let Some(params) = s
            .strip_prefix("gdwn:")
            .or_else(|| s.strip_prefix("GDWN:"))
        else {
            return Err(GameSpecError::UnknownGame(s.to_string()));
        };
        let mut parts = params.split(',');
        let (Some(p), Some(q), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(GameSpecError::BadParameterList(params.to_string()));
        };
        let parse = |tok: &str| -> Result<u64, GameSpecError> {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| GameSpecError::BadParameter(tok.to_string()))
        };
        GameSpec::gdwn(parse(p)?, parse(q)?)
    }
}

/// A straight-line move family, identified by its primitive step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Remove from the second pile only.
    Column,
    /// Remove from the first pile only.
    Row,
    /// Remove equally from both.
    Diagonal,
    /// Remove `p·t` from the first pile and `q·t` from the second.
    SlopePQ,
    /// Remove `q·t` from the first pile and `p·t` from the second.
    SlopeQP,
}

/// Lazily enumerates every option of `pos`.
///
/// Families are visited in the order of [`GameSpec::directions`]; within a
/// family, options closest to `pos` come first. The families are pairwise
/// disjoint (given `p < q`), so no option is produced twice.
pub fn options(spec: GameSpec, pos: Position) -> Options {
    Options {
        spec,
        from: pos,
        family: 0,
        t: 0,
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    spec: GameSpec,
    from: Position,
    family: usize,
    t: u64,
}

impl Iterator for Options {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let families = self.spec.directions();
        while self.family < families.len() {
            let step = self.spec.step(families[self.family]);
            self.t += 1;
            let dx = step.dx.checked_mul(self.t);
            let dy = step.dy.checked_mul(self.t);
            if let (Some(dx), Some(dy)) = (dx, dy) {
                if dx <= self.from.x && dy <= self.from.y {
                    return Some(Position::new(self.from.x - dx, self.from.y - dy));
                }
            }
            self.family += 1;
            self.t = 0;
        }
        None
    }
}

/// Whether `to` is an option of `from`, decided from the coordinate
/// differences alone.
pub fn is_option(spec: GameSpec, from: Position, to: Position) -> bool {
    if to.x > from.x || to.y > from.y {
        return false;
    }
    spec.admits(Move::new(from.x - to.x, from.y - to.y))
}
