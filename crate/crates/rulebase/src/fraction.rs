//! Exact rational confidences and thresholds.
//!
//! Deciders compare supports against thresholds of the form `m/n`; doing this
//! in floating point would turn every boundary case (`conf == gamma`) into a
//! tolerance question. `Frac` keeps everything exact and only approximates
//! when pretty-printing.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Non-negative exact rational. Reduced on construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Frac(Ratio<u64>);

impl Frac {
    pub const ZERO: Frac = Frac(Ratio::new_raw(0, 1));
    pub const ONE: Frac = Frac(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Frac> {
        if denom == 0 {
            return Err(Error::BadFraction(format!("{numer}/{denom}")));
        }
        Ok(Frac(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn approx(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    /// `a >= self * b`, exactly. The workhorse of every threshold decider.
    pub fn le_scaled(&self, a: u64, b: u64) -> bool {
        (a as u128) * (self.denom() as u128) >= (self.numer() as u128) * (b as u128)
    }

    /// `a < self * b`, exactly.
    pub fn gt_scaled(&self, a: u64, b: u64) -> bool {
        !self.le_scaled(a, b)
    }

    /// Smallest integer `k` with `k >= self * n`.
    pub fn ceil_mul(&self, n: u64) -> u64 {
        let prod = (self.numer() as u128) * (n as u128);
        let den = self.denom() as u128;
        prod.div_ceil(den) as u64
    }

    pub fn checked_sub(&self, other: Frac) -> Option<Frac> {
        if *self < other {
            None
        } else {
            Some(Frac(self.0 - other.0))
        }
    }

    pub fn add(&self, other: Frac) -> Frac {
        Frac(self.0 + other.0)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `"m/n"` or a decimal literal like `"0.75"`, which is read exactly
/// as `75/100`. Plain integers are accepted as `k/1`.
impl FromStr for Frac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Frac> {
        let s = s.trim();
        let bad = || Error::BadFraction(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let numer: u64 = n.trim().parse().map_err(|_| bad())?;
            let denom: u64 = d.trim().parse().map_err(|_| bad())?;
            return Frac::new(numer, denom);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let digits: u64 = frac.parse().map_err(|_| bad())?;
            let scale = 10u64.pow(frac.len() as u32);
            return Frac::new(int * scale + digits, scale);
        }
        let numer: u64 = s.parse().map_err(|_| bad())?;
        Ok(Frac(Ratio::from_integer(numer)))
    }
}
