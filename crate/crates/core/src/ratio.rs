//! Nonnegative rationals for exact ratio comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("invalid rational {0:?}; expected e.g. `2`, `0.05` or `3/2`")]
    Syntax(String),
    #[error("rational {0:?} has a zero denominator")]
    ZeroDenominator(String),
    #[error("rational {0:?} is too large")]
    Overflow(String),
}

/// A reduced nonnegative fraction `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    /// Panics when `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    /// For constants already in lowest terms.
    pub const fn new_const(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational { num, den }
    }

    pub fn integer(n: u64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn checked_add(self, other: Rational) -> Option<Rational> {
        let l = self.den.lcm(&other.den);
        let a = (self.num as u128) * (l / self.den) as u128;
        let b = (other.num as u128) * (l / other.den) as u128;
        let n = u64::try_from(a + b).ok()?;
        Some(Rational::new(n, l))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Compares `y / x` with `self` without division. `x` must be positive.
    pub fn cmp_ratio(self, y: u64, x: u64) -> Ordering {
        debug_assert!(x > 0);
        ((y as u128) * self.den as u128).cmp(&((self.num as u128) * x as u128))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * other.den as u128).cmp(&((other.num as u128) * self.den as u128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let syntax = || RationalError::Syntax(s.to_string());
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
        if let Some((n, d)) = t.split_once('/') {
            let (n, d) = (n.trim(), d.trim());
            if !digits(n) || !digits(d) {
                return Err(syntax());
            }
            let n: u64 = n.parse().map_err(|_| RationalError::Overflow(s.to_string()))?;
            let d: u64 = d.parse().map_err(|_| RationalError::Overflow(s.to_string()))?;
            if d == 0 {
                return Err(RationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::new(n, d));
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if (int.is_empty() && frac.is_empty())
            || !(int.is_empty() || digits(int))
            || !(frac.is_empty() || digits(frac))
        {
            return Err(syntax());
        }
        let overflow = || RationalError::Overflow(s.to_string());
        let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(overflow)?;
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| overflow())? };
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| overflow())? };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or_else(overflow)?;
        Ok(Rational::new(num, den))
    }
}
