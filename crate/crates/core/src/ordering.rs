//! Search for a pairing of a set `S` with elements of its complement whose
//! differences `t − s` are pairwise distinct.
//!
//! The finite problem on a horizon `h`: let `C = {1..h} \ S`. Find an
//! injective `t: S → C` with distinct differences such that every element of
//! `C` below `max S` is used. The covering condition is the finite form of
//! complementarity: a value below the largest `a` can only be the `b` of an
//! earlier pair. With `require_positive`, additionally `t(s) > s`.
//!
//! Distinct differences couple the assignments globally, so maximum matching
//! alone does not decide the problem. The search is an exact backtracking
//! over the most constrained element; at each node three augmenting-path
//! matchings act as necessary conditions and prune the subtree:
//!
//! * every open `s` can be matched to a distinct free target,
//! * every open mandatory target can be matched to a distinct open `s`,
//! * every open `s` can be matched to a distinct unclaimed difference.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("set elements must be positive and strictly increasing (at position {0})")]
    NotIncreasing(usize),
    #[error("element {value} exceeds the horizon {horizon}")]
    BeyondHorizon { value: u64, horizon: u64 },
    #[error("horizon {horizon} leaves {available} complement elements for {needed} set elements")]
    HorizonTooSmall { horizon: u64, needed: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub s: u64,
    pub t: u64,
    pub difference: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingResult {
    pub exists: bool,
    /// One assignment per element of `S`, in increasing `s`.
    pub witness: Option<Vec<Assignment>>,
    /// Complement elements below `max S` that a witness has to use.
    pub mandatory: Vec<u64>,
    pub nodes: u64,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct OrderingProblem {
    pub set: Vec<u64>,
    pub horizon: u64,
    pub require_positive: bool,
    complement: Vec<u64>,
    mandatory: Vec<u64>,
}

impl OrderingProblem {
    pub fn new(set: &[u64], horizon: u64, require_positive: bool) -> Result<Self, OrderingError> {
        for (i, &s) in set.iter().enumerate() {
            if s == 0 || (i > 0 && set[i - 1] >= s) {
                return Err(OrderingError::NotIncreasing(i));
            }
            if s > horizon {
                return Err(OrderingError::BeyondHorizon { value: s, horizon });
            }
        }
        let complement: Vec<u64> = (1..=horizon).filter(|v| set.binary_search(v).is_err()).collect();
        if complement.len() < set.len() {
            return Err(OrderingError::HorizonTooSmall {
                horizon,
                needed: set.len(),
                available: complement.len(),
            });
        }
        let max_s = set.last().copied().unwrap_or(0);
        let mandatory = complement.iter().copied().filter(|&c| c < max_s).collect();
        Ok(OrderingProblem {
            set: set.to_vec(),
            horizon,
            require_positive,
            complement,
            mandatory,
        })
    }

    pub fn complement(&self) -> &[u64] {
        &self.complement
    }

    pub fn mandatory(&self) -> &[u64] {
        &self.mandatory
    }

    /// Whether `ts[i]` for `set[i]` satisfies every constraint.
    pub fn is_witness(&self, ts: &[u64]) -> bool {
        if ts.len() != self.set.len() {
            return false;
        }
        let mut targets: Vec<u64> = ts.to_vec();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if targets.iter().any(|t| self.complement.binary_search(t).is_err()) {
            return false;
        }
        if self.mandatory.iter().any(|m| targets.binary_search(m).is_err()) {
            return false;
        }
        let mut diffs: Vec<i64> = self
            .set
            .iter()
            .zip(ts)
            .map(|(&s, &t)| t as i64 - s as i64)
            .collect();
        if self.require_positive && diffs.iter().any(|&d| d <= 0) {
            return false;
        }
        diffs.sort_unstable();
        diffs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn solve(&self) -> OrderingResult {
        let mut search = Search::new(self);
        let found = search.run();
        let witness = found.then(|| {
            self.set
                .iter()
                .zip(&search.assigned)
                .map(|(&s, t)| {
                    let t = self.complement[t.expect("complete assignment")];
                    Assignment { s, t, difference: t as i64 - s as i64 }
                })
                .collect()
        });
        OrderingResult {
            exists: found,
            witness,
            mandatory: self.mandatory.clone(),
            nodes: search.nodes,
        }
    }
}

/// Decides whether `set` admits a distinct-difference pairing within
/// `horizon`, returning a witness when one exists.
pub fn distinct_difference_ordering_exists(
    set: &[u64],
    horizon: u64,
    require_positive: bool,
) -> Result<OrderingResult, OrderingError> {
    Ok(OrderingProblem::new(set, horizon, require_positive)?.solve())
}

/// Kuhn's augmenting-path maximum matching; `adj[l]` lists right vertices.
fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut seen = vec![false; right];
    let mut size = 0;
    for l in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        if augment(l, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

struct Search<'a> {
    problem: &'a OrderingProblem,
    /// Complement index assigned to each set element.
    assigned: Vec<Option<usize>>,
    target_used: Vec<bool>,
    /// Claimed differences, offset by `horizon`.
    diff_used: Vec<bool>,
    mandatory: Vec<bool>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(problem: &'a OrderingProblem) -> Self {
        let mandatory = problem
            .complement
            .iter()
            .map(|c| problem.mandatory.binary_search(c).is_ok())
            .collect();
        Search {
            problem,
            assigned: vec![None; problem.set.len()],
            target_used: vec![false; problem.complement.len()],
            diff_used: vec![false; 2 * problem.horizon as usize + 1],
            mandatory,
            nodes: 0,
        }
    }

    fn diff_slot(&self, si: usize, ti: usize) -> usize {
        let d = self.problem.complement[ti] as i64 - self.problem.set[si] as i64;
        (d + self.problem.horizon as i64) as usize
    }

    fn allowed(&self, si: usize, ti: usize) -> bool {
        let (s, t) = (self.problem.set[si], self.problem.complement[ti]);
        !self.target_used[ti] && !self.diff_used[self.diff_slot(si, ti)] && (!self.problem.require_positive || t > s)
    }

    fn open_sets(&self) -> Vec<usize> {
        (0..self.assigned.len()).filter(|&i| self.assigned[i].is_none()).collect()
    }

    fn open_mandatory(&self) -> Vec<usize> {
        (0..self.target_used.len())
            .filter(|&t| self.mandatory[t] && !self.target_used[t])
            .collect()
    }

    fn feasible(&self, open_s: &[usize], open_m: &[usize]) -> bool {
        if open_m.len() > open_s.len() {
            return false;
        }
        let n_t = self.target_used.len();
        let s_to_t: Vec<Vec<usize>> = open_s
            .iter()
            .map(|&si| (0..n_t).filter(|&ti| self.allowed(si, ti)).collect())
            .collect();
        if max_matching(&s_to_t, n_t) < open_s.len() {
            return false;
        }
        let m_to_s: Vec<Vec<usize>> = open_m
            .iter()
            .map(|&ti| (0..open_s.len()).filter(|&k| self.allowed(open_s[k], ti)).collect())
            .collect();
        if max_matching(&m_to_s, open_s.len()) < open_m.len() {
            return false;
        }
        let s_to_d: Vec<Vec<usize>> = open_s
            .iter()
            .map(|&si| {
                let mut ds: Vec<usize> = (0..n_t)
                    .filter(|&ti| self.allowed(si, ti))
                    .map(|ti| self.diff_slot(si, ti))
                    .collect();
                ds.dedup();
                ds
            })
            .collect();
        max_matching(&s_to_d, self.diff_used.len()) == open_s.len()
    }

    fn place(&mut self, si: usize, ti: usize, on: bool) {
        let slot = self.diff_slot(si, ti);
        self.assigned[si] = on.then_some(ti);
        self.target_used[ti] = on;
        self.diff_used[slot] = on;
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        let open_s = self.open_sets();
        if open_s.is_empty() {
            return true;
        }
        let open_m = self.open_mandatory();
        if !self.feasible(&open_s, &open_m) {
            return false;
        }
        let n_t = self.target_used.len();
        // Branch on whichever open set element or mandatory target has the
        // fewest choices.
        let best_s = open_s
            .iter()
            .map(|&si| {
                let opts: Vec<(usize, usize)> =
                    (0..n_t).filter(|&ti| self.allowed(si, ti)).map(|ti| (si, ti)).collect();
                opts
            })
            .min_by_key(|o| o.len());
        let best_m = open_m
            .iter()
            .map(|&ti| {
                let opts: Vec<(usize, usize)> =
                    open_s.iter().filter(|&&si| self.allowed(si, ti)).map(|&si| (si, ti)).collect();
                opts
            })
            .min_by_key(|o| o.len());
        let choices = match (best_s, best_m) {
            (Some(s), Some(m)) if m.len() < s.len() => m,
            (Some(s), _) => s,
            (None, _) => return false,
        };
        for (si, ti) in choices {
            self.place(si, ti, true);
            if self.run() {
                return true;
            }
            self.place(si, ti, false);
        }
        false
    }
}
