//! Closed-form Wythoff Nim P-positions through the golden-ratio Beatty pair.
//!
//! `⌊φn⌋` is evaluated as `⌊(n + ⌊√(5n²)⌋) / 2⌋`, which is exact because
//! `⌊(n + s)/2⌋ = ⌊(n + ⌊s⌋)/2⌋` for integer `n` and real `s`. φ never
//! appears as a floating-point number.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::game::{canonical, Position};
use crate::ratio::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Beatty term for n = {0} does not fit the 128-bit intermediate or the 64-bit result")]
pub struct BeattyRangeError(pub u64);

/// Integer square root: the largest `r` with `r² <= n`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Seed above the root so Newton's iteration decreases monotonically.
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(x * x <= n && (x + 1).checked_mul(x + 1).is_none_or(|s| s > n));
    x
}

/// `⌊φn⌋`, the lower Wythoff sequence.
pub fn beatty_a(n: u64) -> Result<u64, BeattyRangeError> {
    let n128 = n as u128;
    let five_n_sq = n128
        .checked_mul(n128)
        .and_then(|s| s.checked_mul(5))
        .ok_or(BeattyRangeError(n))?;
    let sum = n128 + isqrt_u128(five_n_sq);
    u64::try_from(sum / 2).map_err(|_| BeattyRangeError(n))
}

/// `⌊φ²n⌋ = ⌊φn⌋ + n`, the upper Wythoff sequence.
pub fn beatty_b(n: u64) -> Result<u64, BeattyRangeError> {
    beatty_a(n)?.checked_add(n).ok_or(BeattyRangeError(n))
}

/// One column of the Wythoff table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BeattyPair {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub delta: u64,
}

impl BeattyPair {
    pub fn new(n: u64) -> Result<Self, BeattyRangeError> {
        let a = beatty_a(n)?;
        let b = a.checked_add(n).ok_or(BeattyRangeError(n))?;
        Ok(BeattyPair { n, a, b, delta: n })
    }
}

/// Columns `0..=max_n` of the Wythoff table.
pub fn wythoff_table(max_n: u64) -> Result<Vec<BeattyPair>, BeattyRangeError> {
    (0..=max_n).map(BeattyPair::new).collect()
}

/// Whether `pos` is a P-position of Wythoff Nim.
pub fn is_wythoff_p(pos: Position) -> bool {
    let c = canonical(pos);
    // Any n whose term overflows has A_n > y >= x, so it cannot match.
    beatty_a(c.y - c.x).is_ok_and(|a| a == c.x)
}

/// Exact comparison of `r` with `φ⁻¹ = (√5 − 1)/2`.
///
/// `u/v ≥ (√5 − 1)/2 ⟺ (2u + v)² ≥ 5v²`. `None` when the numerator or
/// denominator reaches 2⁶², where the squares would leave 128 bits.
pub fn cmp_inverse_golden(r: Rational) -> Option<Ordering> {
    const LIMIT: u64 = 1 << 62;
    if r.num() >= LIMIT || r.den() >= LIMIT {
        return None;
    }
    let (u, v) = (r.num() as u128, r.den() as u128);
    let lhs = (2 * u + v) * (2 * u + v);
    // (2u+v)² never equals 5v² for v > 0 since √5 is irrational.
    Some(lhs.cmp(&(5 * v * v)))
}

/// Exact comparison of `r` with `φ = (1 + √5)/2`, same limits as
/// [`cmp_inverse_golden`].
pub fn cmp_golden(r: Rational) -> Option<Ordering> {
    const LIMIT: u64 = 1 << 62;
    if r.num() >= LIMIT || r.den() >= LIMIT {
        return None;
    }
    let (u, v) = (r.num() as u128, r.den() as u128);
    if 2 * u <= v {
        return Some(Ordering::Less);
    }
    let lhs = (2 * u - v) * (2 * u - v);
    Some(lhs.cmp(&(5 * v * v)))
}
