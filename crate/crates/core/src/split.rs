//! Sector splits of upper P-position sequences.
//!
//! A sequence `(a_n, b_n)` splits at `(α, ε)` when the sector
//! `α <= b/a <= α + ε` eventually holds no points while infinitely many lie on
//! either side. On a finite prefix this can only be observed, not proved;
//! the functions here report the evidence with exact ratio arithmetic.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::ratio::Rational;
use crate::report::Check;
use crate::sequence::even_samples;
use crate::solver::{PSequence, Pair};

/// A hit list at or below this length is reported in full.
pub const FULL_HITS_LIMIT: usize = 1_000;

/// `last_hit_index / len` at or below this is read as "the sector empties".
pub const EVENTUALLY_EMPTY_FRACTION: Rational = Rational::new_const(1, 10);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("alpha and epsilon must be positive (got alpha={alpha}, epsilon={epsilon})")]
    NonPositive { alpha: Rational, epsilon: Rational },
    #[error("no pairs to analyze")]
    Empty,
    #[error("pair {0} has a = 0 away from the origin")]
    ZeroA(usize),
    #[error("sector bound alpha + epsilon overflows")]
    Overflow,
    #[error("the slope-two recurrence is only established for gdwn:1,2, not gdwn:{p},{q}")]
    Unsupported { p: u64, q: u64 },
    #[error("{what}: {have} members, need at least {need}")]
    InsufficientData { what: &'static str, have: usize, need: usize },
    #[error("tail fraction must lie in (0, 1], got {0}")]
    BadTailFraction(f64),
    #[error("sample point {n} lies outside the computed range (complete below {limit})")]
    SampleOutOfRange { n: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Below,
    Inside,
    Above,
}

/// Where `b/a` falls relative to `[alpha, alpha + epsilon]`.
fn classify(p: Pair, alpha: Rational, upper: Rational) -> Side {
    if alpha.cmp_ratio(p.b, p.a) == Ordering::Less {
        Side::Below
    } else if upper.cmp_ratio(p.b, p.a) == Ordering::Greater {
        Side::Above
    } else {
        Side::Inside
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectorCensus {
    pub alpha: Rational,
    pub epsilon: Rational,
    /// Indices `n >= 1` with `alpha <= b_n/a_n <= alpha + epsilon`.
    pub hits: Vec<usize>,
    pub last_hit_index: Option<usize>,
    pub total_below: usize,
    pub total_above: usize,
    /// Number of pairs including the origin.
    pub sequence_length: usize,
}

impl SectorCensus {
    /// Whether the last hit sits within the first tenth of the sequence.
    pub fn looks_eventually_empty(&self) -> bool {
        match self.last_hit_index {
            None => true,
            Some(i) => {
                let f = EVENTUALLY_EMPTY_FRACTION;
                (i as u128) * f.den() as u128 <= (self.sequence_length as u128) * f.num() as u128
            }
        }
    }
}

fn validate(pairs: &[Pair], alpha: Rational, epsilon: Rational) -> Result<Rational, SplitError> {
    if alpha.is_zero() || epsilon.is_zero() {
        return Err(SplitError::NonPositive { alpha, epsilon });
    }
    if pairs.is_empty() {
        return Err(SplitError::Empty);
    }
    if let Some(n) = pairs.iter().skip(1).position(|p| p.a == 0) {
        return Err(SplitError::ZeroA(n + 1));
    }
    alpha.checked_add(epsilon).ok_or(SplitError::Overflow)
}

/// Classifies every pair after the origin as below, inside or above the
/// closed sector `[alpha, alpha + epsilon]`.
pub fn sector_census(pairs: &[Pair], alpha: Rational, epsilon: Rational) -> Result<SectorCensus, SplitError> {
    let upper = validate(pairs, alpha, epsilon)?;
    let mut census = SectorCensus {
        alpha,
        epsilon,
        hits: Vec::new(),
        last_hit_index: None,
        total_below: 0,
        total_above: 0,
        sequence_length: pairs.len(),
    };
    for (n, &p) in pairs.iter().enumerate().skip(1) {
        match classify(p, alpha, upper) {
            Side::Below => census.total_below += 1,
            Side::Above => census.total_above += 1,
            Side::Inside => census.hits.push(n),
        }
    }
    census.last_hit_index = census.hits.last().copied();
    Ok(census)
}

/// Indices whose ratio exceeds `q/p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBeam {
    pub p: u64,
    pub q: u64,
    pub k_indices: Vec<usize>,
}

/// All `n >= 1` with `b_n/a_n > q/p`, in increasing order.
pub fn upper_indices(pairs: &[Pair], p: u64, q: u64) -> UpperBeam {
    let threshold = Rational::new(q, p);
    let k_indices = pairs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, pair)| pair.a > 0 && threshold.cmp_ratio(pair.b, pair.a) == Ordering::Greater)
        .map(|(n, _)| n)
        .collect();
    UpperBeam { p, q, k_indices }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecurrenceFailure {
    /// Position within the beam of the later index.
    pub i: usize,
    pub k_prev: usize,
    pub k_next: usize,
    pub expected_b: u64,
    pub actual_b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub ok: bool,
    pub beam_len: usize,
    pub pairs_checked: usize,
    pub failures: usize,
    /// Number of leading beam entries for which every step holds.
    pub ok_upto: usize,
    pub first_failure: Option<RecurrenceFailure>,
}

impl Check for RecurrenceReport {
    const NAME: &'static str = "recurrence";

    fn passed(&self) -> bool {
        self.ok
    }
}

/// Checks `b_{k_{i+1}} = 2(a_{k_{i+1}} − a_{k_i}) + b_{k_i} + 1` for every
/// consecutive pair of beam indices. Only defined for (1,2); the beam must
/// come from `pairs`.
pub fn verify_recurrence(pairs: &[Pair], beam: &UpperBeam) -> Result<RecurrenceReport, SplitError> {
    if (beam.p, beam.q) != (1, 2) {
        return Err(SplitError::Unsupported { p: beam.p, q: beam.q });
    }
    let mut failures = 0;
    let mut first_failure = None;
    let mut ok_upto = beam.k_indices.len().min(1);
    for (i, w) in beam.k_indices.windows(2).enumerate() {
        let (prev, next) = (pairs[w[0]], pairs[w[1]]);
        let expected = 2 * (next.a as u128 - prev.a as u128) + prev.b as u128 + 1;
        if expected == next.b as u128 {
            if failures == 0 {
                ok_upto = i + 2;
            }
        } else {
            failures += 1;
            first_failure.get_or_insert(RecurrenceFailure {
                i: i + 1,
                k_prev: w[0],
                k_next: w[1],
                expected_b: u64::try_from(expected).unwrap_or(u64::MAX),
                actual_b: next.b,
            });
        }
    }
    Ok(RecurrenceReport {
        ok: failures == 0,
        beam_len: beam.k_indices.len(),
        pairs_checked: beam.k_indices.len().saturating_sub(1),
        failures,
        ok_upto,
        first_failure,
    })
}

pub const MIN_SLOPE_PAIRS: usize = 100;
pub const MIN_FAMILY: usize = 10;
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeEstimate {
    /// Tail median ratio of the beam above `q/p`; absent when the beam is
    /// empty (a single-beam sequence such as Wythoff's).
    pub upper_slope: Option<f64>,
    pub mid_slope: f64,
    pub tail_fraction: f64,
    pub upper_members: usize,
    pub mid_members: usize,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Median of `b/a` over the last `tail_fraction` of a family.
fn tail_median(pairs: &[Pair], family: &[usize], tail_fraction: f64) -> f64 {
    let take = ((family.len() as f64 * tail_fraction).ceil() as usize).clamp(1, family.len());
    let mut tail: Vec<Pair> = family[family.len() - take..].iter().map(|&n| pairs[n]).collect();
    tail.sort_by(|x, y| ((x.b as u128) * y.a as u128).cmp(&((y.b as u128) * x.a as u128)));
    let ratio = |p: &Pair| p.b as f64 / p.a as f64;
    let mid = tail.len() / 2;
    if tail.len() % 2 == 1 {
        ratio(&tail[mid])
    } else {
        (ratio(&tail[mid - 1]) + ratio(&tail[mid])) / 2.0
    }
}

/// Median ratios of the beam family (indices in `beam`) and the middle family
/// (every other `n >= 1`) over the last `tail_fraction` of each.
pub fn estimate_slopes(pairs: &[Pair], beam: &UpperBeam, tail_fraction: f64) -> Result<SlopeEstimate, SplitError> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(SplitError::BadTailFraction(tail_fraction));
    }
    if pairs.len() < MIN_SLOPE_PAIRS {
        return Err(SplitError::InsufficientData {
            what: "pairs",
            have: pairs.len(),
            need: MIN_SLOPE_PAIRS,
        });
    }
    if let Some(n) = pairs.iter().skip(1).position(|p| p.a == 0) {
        return Err(SplitError::ZeroA(n + 1));
    }
    let upper = &beam.k_indices;
    let mut in_beam = vec![false; pairs.len()];
    for &k in upper {
        in_beam[k] = true;
    }
    let middle: Vec<usize> = (1..pairs.len()).filter(|&n| !in_beam[n]).collect();
    if middle.len() < MIN_FAMILY {
        return Err(SplitError::InsufficientData {
            what: "middle family",
            have: middle.len(),
            need: MIN_FAMILY,
        });
    }
    if !upper.is_empty() && upper.len() < MIN_FAMILY {
        return Err(SplitError::InsufficientData {
            what: "upper family",
            have: upper.len(),
            need: MIN_FAMILY,
        });
    }
    Ok(SlopeEstimate {
        upper_slope: (!upper.is_empty()).then(|| round6(tail_median(pairs, upper, tail_fraction))),
        mid_slope: round6(tail_median(pairs, &middle, tail_fraction)),
        tail_fraction,
        upper_members: upper.len(),
        mid_members: middle.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideDensity {
    pub n: u64,
    pub below_count: u64,
    pub above_count: u64,
    pub below_density: f64,
    pub above_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySplitReport {
    /// Always "empirical": a finite prefix cannot establish asymptotic density.
    pub evidence: &'static str,
    pub census: SectorCensus,
    pub samples: Vec<SideDensity>,
    pub density_floor: Rational,
    pub below_min_density: f64,
    pub above_min_density: f64,
    pub below_positive: bool,
    pub above_positive: bool,
    pub sector_empties: bool,
    pub density_split: bool,
}

impl Check for DensitySplitReport {
    const NAME: &'static str = "density_split";

    fn passed(&self) -> bool {
        self.density_split
    }
}

/// Default sampled density below which a side counts as vanishing.
pub const DEFAULT_DENSITY_FLOOR: Rational = Rational::new_const(1, 100);

/// Sector census plus, for each side, `#{side members with a < N} / N` at
/// each sample point. A side is reported positive when every sampled
/// density reaches `density_floor`.
pub fn density_split_report(
    seq: &PSequence,
    alpha: Rational,
    epsilon: Rational,
    sample_points: &[u64],
    density_floor: Rational,
) -> Result<DensitySplitReport, SplitError> {
    let census = sector_census(seq, alpha, epsilon)?;
    let upper = alpha.checked_add(epsilon).ok_or(SplitError::Overflow)?;
    let limit = seq.max_a.saturating_add(1);
    let mut below_a = Vec::new();
    let mut above_a = Vec::new();
    for &p in seq.iter().skip(1) {
        match classify(p, alpha, upper) {
            Side::Below => below_a.push(p.a),
            Side::Above => above_a.push(p.a),
            Side::Inside => {}
        }
    }
    let mut samples = Vec::with_capacity(sample_points.len());
    for &n in sample_points {
        if n == 0 || n > limit {
            return Err(SplitError::SampleOutOfRange { n, limit });
        }
        let below_count = below_a.partition_point(|&a| a < n) as u64;
        let above_count = above_a.partition_point(|&a| a < n) as u64;
        samples.push(SideDensity {
            n,
            below_count,
            above_count,
            below_density: below_count as f64 / n as f64,
            above_density: above_count as f64 / n as f64,
        });
    }
    let reaches_floor = |count: u64, n: u64| Rational::new(count, n) >= density_floor;
    let below_positive = !samples.is_empty() && samples.iter().all(|s| reaches_floor(s.below_count, s.n));
    let above_positive = !samples.is_empty() && samples.iter().all(|s| reaches_floor(s.above_count, s.n));
    let min_of = |f: fn(&SideDensity) -> f64| samples.iter().map(f).fold(f64::INFINITY, f64::min);
    let sector_empties = census.looks_eventually_empty();
    Ok(DensitySplitReport {
        evidence: "empirical",
        below_min_density: min_of(|s| s.below_density),
        above_min_density: min_of(|s| s.above_density),
        below_positive,
        above_positive,
        sector_empties,
        density_split: below_positive && above_positive && sector_empties,
        census,
        samples,
        density_floor,
    })
}

/// Sample points `k` evenly spaced through the computed range.
pub fn default_samples(seq: &PSequence, k: u64) -> Vec<u64> {
    even_samples(seq.max_a, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameSpec;
    use crate::solver::fast_p_sequence;

    const GDWN12_HEAD: [(u64, u64); 7] = [(0, 0), (1, 3), (2, 6), (4, 5), (7, 10), (8, 14), (9, 17)];

    fn pairs(v: &[(u64, u64)]) -> Vec<Pair> {
        v.iter().copied().map(Pair::from).collect()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn wythoff_misses_sector_below_phi() {
        let w = fast_p_sequence(GameSpec::Wythoff, 10_000);
        let c = sector_census(&w, r("1.5"), r("0.1")).unwrap();
        assert!(c.hits.is_empty());
        assert_eq!(c.total_below, 0);
        assert_eq!(c.total_above, w.len() - 1);
    }

    #[test]
    fn gdwn12_head_sector() {
        let c = sector_census(&pairs(&GDWN12_HEAD), r("2"), r("0.05")).unwrap();
        assert!(c.hits.is_empty());
        assert_eq!((c.total_below, c.total_above), (4, 2));
        assert_eq!(c.last_hit_index, None);
    }

    #[test]
    fn sector_is_closed() {
        let p = pairs(&[(0, 0), (10, 20), (20, 41), (100, 206)]);
        let c = sector_census(&p, r("2"), r("0.05")).unwrap();
        assert_eq!(c.hits, [1, 2]);
        assert_eq!(c.total_above, 1);
    }

    #[test]
    fn census_validation() {
        let p = pairs(&GDWN12_HEAD);
        assert!(matches!(sector_census(&p, r("0"), r("0.05")), Err(SplitError::NonPositive { .. })));
        assert!(matches!(sector_census(&p, r("2"), r("0")), Err(SplitError::NonPositive { .. })));
        assert_eq!(sector_census(&[], r("2"), r("0.05")), Err(SplitError::Empty));
        assert_eq!(
            sector_census(&pairs(&[(0, 0), (0, 1)]), r("2"), r("0.05")),
            Err(SplitError::ZeroA(1))
        );
    }

    #[test]
    fn gdwn12_head_beam_and_recurrence() {
        let p = pairs(&GDWN12_HEAD);
        let beam = upper_indices(&p, 1, 2);
        assert_eq!(beam.k_indices, [1, 2]);
        let rep = verify_recurrence(&p, &beam).unwrap();
        assert!(rep.ok);
        assert_eq!((rep.pairs_checked, rep.ok_upto), (1, 2));
    }

    #[test]
    fn beam_edge_cases() {
        assert!(upper_indices(&[], 1, 2).k_indices.is_empty());
        let w = fast_p_sequence(GameSpec::Wythoff, 10_000);
        assert!(upper_indices(&w, 1, 2).k_indices.is_empty());
        let single = UpperBeam { p: 1, q: 2, k_indices: vec![1] };
        let rep = verify_recurrence(&pairs(&GDWN12_HEAD), &single).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.pairs_checked, 0);
        let other = UpperBeam { p: 2, q: 3, k_indices: vec![] };
        assert_eq!(
            verify_recurrence(&pairs(&GDWN12_HEAD), &other),
            Err(SplitError::Unsupported { p: 2, q: 3 })
        );
    }

    #[test]
    fn recurrence_failure_is_located() {
        let p = pairs(&[(0, 0), (1, 3), (2, 7), (4, 5)]);
        let beam = upper_indices(&p, 1, 2);
        let rep = verify_recurrence(&p, &beam).unwrap();
        assert!(!rep.ok);
        let f = rep.first_failure.unwrap();
        assert_eq!((f.k_prev, f.k_next, f.expected_b, f.actual_b), (1, 2, 6, 7));
        assert_eq!(rep.ok_upto, 1);
    }

    #[test]
    fn wythoff_single_family_slope() {
        let w = fast_p_sequence(GameSpec::Wythoff, 20_000);
        let beam = upper_indices(&w, 1, 2);
        let est = estimate_slopes(&w, &beam, DEFAULT_TAIL_FRACTION).unwrap();
        assert_eq!(est.upper_slope, None);
        assert!((est.mid_slope - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-3);
    }

    #[test]
    fn slopes_need_data() {
        let p = pairs(&GDWN12_HEAD[..5]);
        let beam = upper_indices(&p, 1, 2);
        assert!(matches!(
            estimate_slopes(&p, &beam, 0.5),
            Err(SplitError::InsufficientData { what: "pairs", .. })
        ));
        let w = fast_p_sequence(GameSpec::Wythoff, 1_000);
        let beam = upper_indices(&w, 1, 2);
        assert!(matches!(estimate_slopes(&w, &beam, 0.0), Err(SplitError::BadTailFraction(_))));
        let tiny_beam = UpperBeam { p: 1, q: 2, k_indices: vec![1, 2, 3] };
        assert!(matches!(
            estimate_slopes(&w, &tiny_beam, 0.5),
            Err(SplitError::InsufficientData { what: "upper family", .. })
        ));
    }

    #[test]
    fn median_of_even_tail() {
        let p = pairs(&[(0, 0), (1, 3), (2, 5), (3, 4), (4, 5)]);
        assert_eq!(tail_median(&p, &[1, 2], 1.0), 2.75);
        assert_eq!(tail_median(&p, &[1, 2, 3, 4], 0.5), (4.0 / 3.0 + 1.25) / 2.0);
    }

    #[test]
    fn wythoff_is_not_a_density_split_at_two() {
        let w = fast_p_sequence(GameSpec::Wythoff, 20_000);
        let samples = default_samples(&w, 10);
        let rep = density_split_report(&w, r("2"), r("0.05"), &samples, DEFAULT_DENSITY_FLOOR).unwrap();
        assert!(rep.below_positive);
        assert!(!rep.above_positive);
        assert_eq!(rep.above_min_density, 0.0);
        assert!(!rep.density_split);
        assert_eq!(rep.evidence, "empirical");
    }

    #[test]
    fn density_split_validation() {
        let empty = PSequence::from_pairs(vec![]);
        assert_eq!(
            density_split_report(&empty, r("2"), r("0.05"), &[], DEFAULT_DENSITY_FLOOR),
            Err(SplitError::Empty)
        );
        let t2 = PSequence::from_pairs(pairs(&GDWN12_HEAD));
        assert_eq!(
            density_split_report(&t2, r("2"), r("0.05"), &[11], DEFAULT_DENSITY_FLOOR),
            Err(SplitError::SampleOutOfRange { n: 11, limit: 10 })
        );
    }
}
