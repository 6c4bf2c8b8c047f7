//! Bounded open intervals with exact rational endpoints.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// The open interval `(lo, hi)` with `lo < hi`.
///
/// Open vs. closed never matters for integrals, but it does for essential
/// infima: a piece counts only when it meets the interval in positive
/// measure, which the open convention makes unambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Whether `other` is contained in `self` (endpoint contact allowed).
    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}
