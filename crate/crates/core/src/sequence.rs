//! Structural checks on upper P-position sequences: Property W, the partial
//! sum comparison against Wythoff's sequences, and the density of
//! `a`-coordinates.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::beatty::{beatty_a, beatty_b, cmp_inverse_golden, BeattyRangeError};
use crate::ratio::Rational;
use crate::report::Check;
use crate::solver::{PSequence, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence is empty; it must start with (0,0)")]
    Empty,
    #[error("sequence must start with (0,0), found ({0},{1})")]
    MissingOrigin(u64, u64),
    #[error("Property W fails ({0:?}); the partial sum comparison only applies to sequences that satisfy it")]
    PropertyW(Violation),
    #[error(transparent)]
    Beatty(#[from] BeattyRangeError),
    #[error("sample point {n} lies outside the computed range (complete below {limit})")]
    SampleOutOfRange { n: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `a_{i} >= a_{j}` for consecutive indices `i = j - 1`.
    NotIncreasing,
    /// `a_i >= b_i`.
    NotStrictPair,
    /// A value repeats (`index_j` set), or a value up to the largest `a` is
    /// missing (`index_j` absent; `index_i` is the first pair beyond it).
    NotComplementary,
    /// `b_i - a_i = b_j - a_j`.
    DuplicateDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index_i: usize,
    pub index_j: Option<usize>,
    /// The repeated or missing value for complementarity failures.
    pub value: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyWReport {
    pub ok: bool,
    pub pairs: usize,
    pub violation: Option<Violation>,
}

impl Check for PropertyWReport {
    const NAME: &'static str = "property_w";

    fn passed(&self) -> bool {
        self.ok
    }
}

fn require_origin(pairs: &[Pair]) -> Result<(), SequenceError> {
    match pairs.first() {
        None => Err(SequenceError::Empty),
        Some(p) if (p.a, p.b) != (0, 0) => Err(SequenceError::MissingOrigin(p.a, p.b)),
        Some(_) => Ok(()),
    }
}

/// Checks Property W on a finite prefix starting at the origin.
///
/// Pairs are scanned in index order; for each index the checks run as
/// increasing `a`, `a < b`, no repeated coordinate, distinct difference. The
/// gap check over `1..=max a` runs last. The first violation is reported.
pub fn check_property_w(pairs: &[Pair]) -> Result<PropertyWReport, SequenceError> {
    require_origin(pairs)?;
    let report = |violation: Option<Violation>| PropertyWReport {
        ok: violation.is_none(),
        pairs: pairs.len(),
        violation,
    };
    let mut owner: HashMap<u64, usize> = HashMap::with_capacity(2 * pairs.len());
    let mut deltas: HashMap<i128, usize> = HashMap::with_capacity(pairs.len());
    for (n, p) in pairs.iter().enumerate().skip(1) {
        let fail = |kind, i, j, value| Some(Violation { kind, index_i: i, index_j: j, value });
        if pairs[n - 1].a >= p.a {
            return Ok(report(fail(ViolationKind::NotIncreasing, n - 1, Some(n), None)));
        }
        if p.a >= p.b {
            return Ok(report(fail(ViolationKind::NotStrictPair, n, None, None)));
        }
        for v in [p.a, p.b] {
            if let Some(&i) = owner.get(&v) {
                return Ok(report(fail(ViolationKind::NotComplementary, i, Some(n), Some(v))));
            }
            owner.insert(v, n);
        }
        if let Some(&i) = deltas.get(&p.delta()) {
            return Ok(report(fail(ViolationKind::DuplicateDelta, i, Some(n), None)));
        }
        deltas.insert(p.delta(), n);
    }
    let max_a = pairs.last().map_or(0, |p| p.a);
    if let Some(v) = (1..=max_a).find(|v| !owner.contains_key(v)) {
        let first_beyond = pairs.partition_point(|p| p.a < v);
        return Ok(report(Some(Violation {
            kind: ViolationKind::NotComplementary,
            index_i: first_beyond,
            index_j: None,
            value: Some(v),
        })));
    }
    Ok(report(None))
}

/// Running sums of a sequence and of Wythoff's sequences at one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrefixSums {
    pub n: usize,
    pub sum_wythoff_a: u128,
    pub sum_x: u128,
    pub sum_wythoff_b: u128,
    pub sum_y: u128,
}

impl PrefixSums {
    /// `ΣA − Σx`, required to be nonnegative.
    pub fn lower_margin(&self) -> i128 {
        self.sum_wythoff_a as i128 - self.sum_x as i128
    }

    /// `Σy − ΣB`, required to be nonnegative.
    pub fn upper_margin(&self) -> i128 {
        self.sum_y as i128 - self.sum_wythoff_b as i128
    }
}

/// Prefix sums `Σ_{i<=n}` for every `n` of the sequence.
pub fn prefix_sums(pairs: &[Pair]) -> Result<Vec<PrefixSums>, BeattyRangeError> {
    let mut out = Vec::with_capacity(pairs.len());
    let mut acc = PrefixSums {
        n: 0,
        sum_wythoff_a: 0,
        sum_x: 0,
        sum_wythoff_b: 0,
        sum_y: 0,
    };
    for (n, p) in pairs.iter().enumerate() {
        acc.n = n;
        acc.sum_wythoff_a += beatty_a(n as u64)? as u128;
        acc.sum_wythoff_b += beatty_b(n as u64)? as u128;
        acc.sum_x += p.a as u128;
        acc.sum_y += p.b as u128;
        out.push(acc);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Margin {
    pub margin: i128,
    pub at_n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSumReport {
    pub ok: bool,
    pub prefixes: usize,
    /// Tightest `ΣA − Σx` over `n >= 1`.
    pub lower: Option<Margin>,
    /// Tightest `Σy − ΣB` over `n >= 1`.
    pub upper: Option<Margin>,
    pub first_failure: Option<usize>,
    pub last_failure: Option<usize>,
    /// Prefixes where either inequality fails.
    pub failures: usize,
    pub last: PrefixSums,
}

impl Check for PartialSumReport {
    const NAME: &'static str = "partial_sums";

    fn passed(&self) -> bool {
        self.ok
    }
}

/// Compares every prefix sum of `x` and `y` with those of Wythoff's `A` and
/// `B`: `ΣA >= Σx` and `ΣB <= Σy`. Refuses sequences failing Property W.
pub fn partial_sum_compare(pairs: &[Pair]) -> Result<PartialSumReport, SequenceError> {
    let w = check_property_w(pairs)?;
    if let Some(v) = w.violation {
        return Err(SequenceError::PropertyW(v));
    }
    let sums = prefix_sums(pairs)?;
    let tightest = |f: fn(&PrefixSums) -> i128| {
        sums.iter()
            .skip(1)
            .map(|s| Margin { margin: f(s), at_n: s.n })
            .min_by_key(|m| (m.margin, m.at_n))
    };
    let failed: Vec<usize> = sums
        .iter()
        .filter(|s| s.lower_margin() < 0 || s.upper_margin() < 0)
        .map(|s| s.n)
        .collect();
    let first_failure = failed.first().copied();
    Ok(PartialSumReport {
        ok: failed.is_empty(),
        last_failure: failed.last().copied(),
        failures: failed.len(),
        prefixes: sums.len(),
        lower: tightest(PrefixSums::lower_margin),
        upper: tightest(PrefixSums::upper_margin),
        first_failure,
        last: *sums.last().unwrap(),
    })
}

/// Counts of `a_i < n` and `b_i < n` over `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensitySample {
    pub n: u64,
    pub a_count: u64,
    pub b_count: u64,
    pub tau: f64,
    pub b_density: f64,
}

impl DensitySample {
    /// `τ(n) = #{i >= 1 : a_i < n} / n`.
    pub fn tau(&self) -> Rational {
        Rational::new(self.a_count, self.n)
    }

    pub fn b_ratio(&self) -> Rational {
        Rational::new(self.b_count, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub samples: Vec<DensitySample>,
    /// Sample with the smallest `τ` over the second half of the samples.
    pub min_tau_tail: Option<DensitySample>,
}

impl DensityProfile {
    /// First sample with `n >= from_n` where `τ(n) < φ⁻¹ − slack`, compared
    /// exactly.
    pub fn lower_bound_violation(&self, slack: Rational, from_n: u64) -> Option<DensitySample> {
        self.samples.iter().copied().filter(|s| s.n >= from_n).find(|s| {
            let lifted = s.tau().checked_add(slack).expect("density plus slack overflows");
            cmp_inverse_golden(lifted).expect("density denominator too large").is_lt()
        })
    }
}

/// Evenly spaced sample points `round(i·limit/k)` for `i = 1..=k`, deduplicated.
pub fn even_samples(limit: u64, k: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=k)
        .map(|i| ((i as u128 * limit as u128 + k as u128 / 2) / k as u128) as u64)
        .filter(|&n| n > 0)
        .collect();
    v.dedup();
    v
}

/// `τ(N)` and the `b`-side density at each sample point.
///
/// The sequence must be complete below every sample point, i.e. each
/// `N <= seq.max_a + 1`.
pub fn density_profile(seq: &PSequence, sample_points: &[u64]) -> Result<DensityProfile, SequenceError> {
    let limit = seq.max_a.saturating_add(1);
    let body = seq.pairs.get(1..).unwrap_or(&[]);
    let mut bs: Vec<u64> = body.iter().map(|p| p.b).collect();
    bs.sort_unstable();
    let mut samples = Vec::with_capacity(sample_points.len());
    for &n in sample_points {
        if n == 0 || n > limit {
            return Err(SequenceError::SampleOutOfRange { n, limit });
        }
        let a_count = body.partition_point(|p| p.a < n) as u64;
        let b_count = bs.partition_point(|&b| b < n) as u64;
        samples.push(DensitySample {
            n,
            a_count,
            b_count,
            tau: a_count as f64 / n as f64,
            b_density: b_count as f64 / n as f64,
        });
    }
    let min_tau_tail = samples[samples.len() / 2..]
        .iter()
        .copied()
        .min_by(|x, y| x.tau().cmp(&y.tau()));
    Ok(DensityProfile { samples, min_tau_tail })
}
