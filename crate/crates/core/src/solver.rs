//! P-position computation: a brute-force grid classifier that serves as the
//! correctness oracle, and a fast column-by-column generator keyed on the
//! line invariants of each move family.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::beatty::is_wythoff_p;
use crate::game::{canonical, options, Family, GameSpec, Position};

/// Default limit on the number of cells `brute_classify` may allocate.
pub const DEFAULT_CELL_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("grid of {cells} cells exceeds the budget of {budget}")]
    BudgetExceeded { cells: u128, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    P,
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// P/N classification of every position in `[0,max_x] × [0,max_y]`.
///
/// Options only ever decrease coordinates, so the rectangle is closed under
/// moves and no information from outside it is needed.
#[derive(Debug, Clone)]
pub struct PNGrid {
    spec: GameSpec,
    max_x: u64,
    max_y: u64,
    cells: Vec<bool>,
}

impl PNGrid {
    pub fn spec(&self) -> GameSpec {
        self.spec
    }

    pub fn max_x(&self) -> u64 {
        self.max_x
    }

    pub fn max_y(&self) -> u64 {
        self.max_y
    }

    fn index(&self, pos: Position) -> Option<usize> {
        (pos.x <= self.max_x && pos.y <= self.max_y)
            .then(|| (pos.x * (self.max_y + 1) + pos.y) as usize)
    }

    /// Classification of `pos`, or `None` outside the grid.
    pub fn get(&self, pos: Position) -> Option<Outcome> {
        self.index(pos)
            .map(|i| if self.cells[i] { Outcome::P } else { Outcome::N })
    }

    pub fn is_p(&self, pos: Position) -> bool {
        self.index(pos).is_some_and(|i| self.cells[i])
    }

    /// All P-positions in lexicographic order.
    pub fn p_positions(&self) -> impl Iterator<Item = Position> + '_ {
        let h = self.max_y + 1;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(move |(i, _)| Position::new(i as u64 / h, i as u64 % h))
    }

    /// P-positions with `x < y`, plus the origin.
    pub fn upper_p_positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.p_positions().filter(|p| p.x < p.y || p.is_terminal())
    }
}

/// Classifies every cell of `[0,max_x] × [0,max_y]` under the default budget.
pub fn brute_classify(spec: GameSpec, max_x: u64, max_y: u64) -> Result<PNGrid, SolveError> {
    brute_classify_with_budget(spec, max_x, max_y, DEFAULT_CELL_BUDGET)
}

pub fn brute_classify_with_budget(
    spec: GameSpec,
    max_x: u64,
    max_y: u64,
    budget: u64,
) -> Result<PNGrid, SolveError> {
    let cells = (max_x as u128 + 1).saturating_mul(max_y as u128 + 1);
    if cells > budget as u128 {
        return Err(SolveError::BudgetExceeded { cells, budget });
    }
    let mut grid = PNGrid {
        spec,
        max_x,
        max_y,
        cells: vec![false; cells as usize],
    };
    // Lexicographic order: every option has a smaller x, or the same x and a
    // smaller y, so it is classified before the cell that reaches it.
    for x in 0..=max_x {
        for y in 0..=max_y {
            let pos = Position::new(x, y);
            let p = !options(spec, pos).any(|o| grid.is_p(o));
            let i = grid.index(pos).unwrap();
            grid.cells[i] = p;
        }
    }
    Ok(grid)
}

/// An upper P-position `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    pub a: u64,
    pub b: u64,
}

impl Pair {
    pub const fn new(a: u64, b: u64) -> Self {
        Pair { a, b }
    }

    /// `b - a`, negative for malformed input.
    pub fn delta(self) -> i128 {
        self.b as i128 - self.a as i128
    }

    pub fn position(self) -> Position {
        Position::new(self.a, self.b)
    }
}

impl From<(u64, u64)> for Pair {
    fn from((a, b): (u64, u64)) -> Self {
        Pair { a, b }
    }
}

/// Upper P-positions `(a_n, b_n)` in order of increasing `a`.
///
/// `max_a` records how far the list is known to be complete: every upper
/// P-position with `a <= max_a` is present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSequence {
    pub spec: Option<GameSpec>,
    pub pairs: Vec<Pair>,
    pub max_a: u64,
}

impl PSequence {
    /// Wraps externally supplied data; completeness is assumed up to the last
    /// `a` value.
    pub fn from_pairs(pairs: Vec<Pair>) -> Self {
        let max_a = pairs.last().map_or(0, |p| p.a);
        PSequence {
            spec: None,
            pairs,
            max_a,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl std::ops::Deref for PSequence {
    type Target = [Pair];

    fn deref(&self) -> &[Pair] {
        &self.pairs
    }
}

const EMPTY: u64 = u64::MAX;

/// Occupants of the lines of one move family, keyed by the line invariant
/// `dy·x − dx·y` of the family's primitive step `(dx, dy)`.
///
/// Slots hold the occupant's coordinates, `EMPTY` when the line is free.
struct LineTable {
    dx: i128,
    dy: i128,
    nonneg: Vec<[u64; 2]>,
    neg: Vec<[u64; 2]>,
}

impl LineTable {
    fn new(spec: GameSpec, family: Family) -> Self {
        let step = spec.step(family);
        LineTable {
            dx: step.dx as i128,
            dy: step.dy as i128,
            nonneg: Vec::new(),
            neg: Vec::new(),
        }
    }

    #[inline]
    fn slot(&self, pos: Position) -> (bool, usize) {
        let key = self.dy * pos.x as i128 - self.dx * pos.y as i128;
        if key >= 0 {
            (false, key as usize)
        } else {
            (true, (-key - 1) as usize)
        }
    }

    #[inline]
    fn get(&self, pos: Position) -> Option<Position> {
        let (neg, i) = self.slot(pos);
        let v = if neg { &self.neg } else { &self.nonneg };
        match v.get(i) {
            Some(&[x, y]) if x != EMPTY => Some(Position::new(x, y)),
            _ => None,
        }
    }

    fn insert(&mut self, pos: Position) {
        let (neg, i) = self.slot(pos);
        let v = if neg { &mut self.neg } else { &mut self.nonneg };
        if v.len() <= i {
            v.resize(i + 1, [EMPTY; 2]);
        }
        // Two P-positions on one line would be options of each other.
        debug_assert!(v[i][0] == EMPTY, "line already occupied by {:?}", v[i]);
        if v[i][0] == EMPTY {
            v[i] = [pos.x, pos.y];
        }
    }
}

/// Least value `>= d` not yet marked, via path-compressed forwarding.
#[derive(Default)]
struct FreeList {
    next: Vec<usize>,
}

impl FreeList {
    #[inline]
    fn grow(&mut self, len: usize) {
        if self.next.len() >= len {
            return;
        }
        let target = len.max(2 * self.next.len());
        while self.next.len() < target {
            let i = self.next.len();
            self.next.push(i);
        }
    }

    fn find(&mut self, d: usize) -> usize {
        self.grow(d + 1);
        let mut root = d;
        while self.next[root] != root {
            root = self.next[root];
        }
        let mut cur = d;
        while self.next[cur] != root {
            let up = self.next[cur];
            self.next[cur] = root;
            cur = up;
        }
        root
    }

    fn mark(&mut self, d: usize) {
        self.grow(d + 2);
        self.next[d] = d + 1;
    }
}

/// Incremental generator of upper P-positions.
struct Generator {
    tables: Vec<LineTable>,
    used: Vec<bool>,
    mex: u64,
    /// Differences `b - a` of emitted upper pairs.
    deltas: FreeList,
}

impl Generator {
    fn new(spec: GameSpec) -> Self {
        Generator {
            // Slope families reject most candidates, so they go first.
            tables: spec
                .directions()
                .iter()
                .rev()
                .map(|&f| LineTable::new(spec, f))
                .collect(),
            used: Vec::new(),
            mex: 0,
            deltas: FreeList::default(),
        }
    }

    fn is_used(&self, v: u64) -> bool {
        self.used.get(v as usize).copied().unwrap_or(false)
    }

    fn mark(&mut self, v: u64) {
        let i = v as usize;
        if self.used.len() <= i {
            self.used.resize((i + 1).max(self.used.len() * 2), false);
        }
        self.used[i] = true;
    }

    /// Whether some emitted P-position (or reflection) is an option of
    /// `cand`. A table occupant shares the candidate's line, so it is an
    /// option exactly when it lies weakly below-left and differs.
    #[inline]
    fn attacked(&self, cand: Position) -> bool {
        self.tables.iter().any(|t| {
            t.get(cand).is_some_and(|occ| {
                occ.x <= cand.x && occ.y <= cand.y && occ != cand
            })
        })
    }

    fn emit(&mut self, pair: Pair) {
        let pos = pair.position();
        for t in &mut self.tables {
            t.insert(pos);
            if pos.x != pos.y {
                t.insert(pos.reflect());
            }
        }
        self.mark(pair.a);
        self.mark(pair.b);
        self.deltas.mark((pair.b - pair.a) as usize);
        while self.is_used(self.mex) {
            self.mex += 1;
        }
    }

    /// The next upper P-position: least unattacked, unused `y > a` on the
    /// column `a = mex` of all coordinates used so far.
    ///
    /// Every taken difference `d` belongs to an earlier pair `(a', a' + d)`
    /// with `a' < a`, which lies diagonally below `(a, a + d)`; those
    /// candidates are skipped without a table lookup.
    fn next_pair(&mut self) -> Pair {
        let a = self.mex;
        let mut d = self.deltas.find(1);
        loop {
            let y = a + d as u64;
            let cand = Position::new(a, y);
            if !self.is_used(y) && !self.attacked(cand) {
                break;
            }
            d = self.deltas.find(d + 1);
        }
        let pair = Pair::new(a, a + d as u64);
        self.emit(pair);
        pair
    }
}

/// All upper P-positions with `a <= max_a`.
///
/// Nim has no upper P-positions with `a < b`; its P-positions form the
/// diagonal, and the result is the origin alone.
pub fn fast_p_sequence(spec: GameSpec, max_a: u64) -> PSequence {
    let mut pairs = vec![Pair::new(0, 0)];
    if spec != GameSpec::Nim {
        let mut gen = Generator::new(spec);
        gen.emit(Pair::new(0, 0));
        while gen.mex <= max_a {
            pairs.push(gen.next_pair());
        }
    }
    PSequence {
        spec: Some(spec),
        pairs,
        max_a,
    }
}

/// Whether `pos` is a P-position according to `seq`, which must be complete
/// for `min(x, y)`.
pub fn predicted_p(seq: &PSequence, pos: Position) -> bool {
    let c = canonical(pos);
    if seq.spec == Some(GameSpec::Nim) {
        return c.x == c.y;
    }
    seq.pairs
        .binary_search_by_key(&c.x, |p| p.a)
        .is_ok_and(|i| seq.pairs[i].b == c.y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub position: Position,
    pub brute: Outcome,
    pub fast: Outcome,
    /// Closed-form verdict, Wythoff only.
    pub oracle: Option<Outcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub game: String,
    pub bound: u64,
    pub max_x: u64,
    pub max_y: u64,
    pub agree: bool,
    pub cells_checked: u64,
    pub brute_p_cells: u64,
    pub fast_pairs: usize,
    /// Emitted pairs too tall for the grid, so not cross-checked.
    pub pairs_beyond_grid: usize,
    pub oracle_checked: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Cross-checks `fast_p_sequence` (and the closed form for Wythoff) against
/// `brute_classify` on `[0,bound] × [0,3·bound]`.
pub fn verify_equivalence(spec: GameSpec, bound: u64) -> Result<EquivalenceReport, SolveError> {
    verify_equivalence_with_budget(spec, bound, DEFAULT_CELL_BUDGET)
}

pub fn verify_equivalence_with_budget(
    spec: GameSpec,
    bound: u64,
    budget: u64,
) -> Result<EquivalenceReport, SolveError> {
    let max_y = bound.saturating_mul(3);
    let grid = brute_classify_with_budget(spec, bound, max_y, budget)?;
    let seq = fast_p_sequence(spec, bound);
    let oracle_checked = spec == GameSpec::Wythoff;
    let as_outcome = |p: bool| if p { Outcome::P } else { Outcome::N };

    let mut first_mismatch = None;
    let mut brute_p_cells = 0;
    let mut cells_checked = 0;
    'scan: for x in 0..=bound {
        for y in 0..=max_y {
            let pos = Position::new(x, y);
            cells_checked += 1;
            let brute = grid.is_p(pos);
            brute_p_cells += brute as u64;
            let fast = predicted_p(&seq, pos);
            let oracle = oracle_checked.then(|| is_wythoff_p(pos));
            if brute != fast || oracle.is_some_and(|o| o != brute) {
                first_mismatch = Some(Mismatch {
                    position: pos,
                    brute: as_outcome(brute),
                    fast: as_outcome(fast),
                    oracle: oracle.map(as_outcome),
                });
                break 'scan;
            }
        }
    }
    let pairs_beyond_grid = seq.pairs.iter().filter(|p| p.b > max_y).count();
    Ok(EquivalenceReport {
        game: spec.to_string(),
        bound,
        max_x: bound,
        max_y,
        agree: first_mismatch.is_none(),
        cells_checked,
        brute_p_cells,
        fast_pairs: seq.len(),
        pairs_beyond_grid,
        oracle_checked,
        first_mismatch,
    })
}

/// Upper P-positions read off a brute-force grid, keyed by `a`.
pub fn grid_upper_pairs(grid: &PNGrid) -> HashMap<u64, u64> {
    grid.upper_p_positions().map(|p| (p.x, p.y)).collect()
}
