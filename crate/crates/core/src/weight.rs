//! Positive piecewise-constant weights with exact rational arithmetic.
//!
//! A [`StepWeight`] is the computable stand-in for a general weight: finitely
//! many pieces, each a positive rational constant on a half-open cell
//! `(t_{k-1}, t_k]` (left-continuous convention, so the value *at* a
//! breakpoint belongs to the piece ending there).  Everything in this module
//! — integrals, averages, essential infima, distribution functions, the
//! non-increasing rearrangement — is computed exactly, so downstream
//! inequality checks are true comparisons rather than tolerance tests.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{format_rational, to_f64, Rational};

/// One point of a distribution function: `measure = |{w > level}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionPoint {
    pub level: Rational,
    pub measure: Rational,
}

/// A positive step weight on a bounded interval.
///
/// Invariants enforced at construction: strictly increasing breakpoints,
/// strictly positive values, and `values.len() + 1 == breakpoints.len()`
/// with at least one piece.
#[derive(Debug, Clone)]
pub struct StepWeight {
    /// `t_0 < t_1 < ... < t_n`; the domain is `(t_0, t_n)`.
    breakpoints: Vec<Rational>,
    /// `values[k]` rules the cell `(t_k, t_{k+1}]`.
    values: Vec<Rational>,
    /// `prefix[k]` = integral from `t_0` to `t_k`; `prefix[0] = 0`.
    prefix: Vec<Rational>,
}

impl PartialEq for StepWeight {
    fn eq(&self, other: &Self) -> bool {
        self.breakpoints == other.breakpoints && self.values == other.values
    }
}

impl Eq for StepWeight {}

impl StepWeight {
    /// Validates and builds a weight from breakpoints `t_0 < ... < t_n` and
    /// per-piece values `v_1 ... v_n`.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 || values.is_empty() {
            return Err(Error::EmptyWeight);
        }
        if values.len() != breakpoints.len() - 1 {
            return Err(Error::LengthMismatch {
                breakpoints: breakpoints.len(),
                expected: breakpoints.len() - 1,
                got: values.len(),
            });
        }
        for (k, pair) in breakpoints.windows(2).enumerate() {
            if pair[0] >= pair[1] {
                return Err(Error::BreakpointsNotIncreasing { index: k + 1 });
            }
        }
        for (k, v) in values.iter().enumerate() {
            if *v <= Rational::zero() {
                return Err(Error::NonPositiveValue { index: k });
            }
        }
        let mut prefix = Vec::with_capacity(breakpoints.len());
        prefix.push(Rational::zero());
        for k in 0..values.len() {
            let cell = &breakpoints[k + 1] - &breakpoints[k];
            let last = prefix.last().unwrap().clone();
            prefix.push(last + &values[k] * cell);
        }
        Ok(Self {
            breakpoints,
            values,
            prefix,
        })
    }

    /// Builds a weight starting at `start` from `(length, value)` pieces.
    pub fn from_lengths<I>(start: Rational, pieces: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut breakpoints = vec![start];
        let mut values = Vec::new();
        for (len, value) in pieces {
            let last = breakpoints.last().unwrap().clone();
            breakpoints.push(last + len);
            values.push(value);
        }
        Self::new(breakpoints, values)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Number of pieces.
    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// `prefix[k]` = exact integral from `t_0` to `t_k`.
    pub fn prefix_sums(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn domain(&self) -> Interval {
        Interval::new(
            self.breakpoints[0].clone(),
            self.breakpoints.last().unwrap().clone(),
        )
        .expect("breakpoints are strictly increasing")
    }

    pub fn domain_length(&self) -> Rational {
        self.breakpoints.last().unwrap() - &self.breakpoints[0]
    }

    /// Total integral over the domain.
    pub fn total_integral(&self) -> Rational {
        self.prefix.last().unwrap().clone()
    }

    /// `(length, value)` view of the pieces.
    pub fn pieces(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (&self.breakpoints[k + 1] - &self.breakpoints[k], v))
    }

    fn check_in_domain(&self, interval: &Interval) -> Result<()> {
        if !self.domain().contains(interval) {
            return Err(Error::OutOfDomain {
                interval: interval.to_string(),
                domain: self.domain().to_string(),
            });
        }
        Ok(())
    }

    /// Piece index (0-based) whose closed cell contains `x`; `x` must lie in
    /// the closed domain.  Breakpoints resolve to the piece ending there,
    /// except `t_0`, which resolves to piece 0.
    fn piece_at(&self, x: &Rational) -> usize {
        let n = self.values.len();
        // First k with t_{k+1} >= x.
        let k = self.breakpoints[1..=n].partition_point(|t| t < x);
        k.min(n - 1)
    }

    /// Exact integral from `t_0` to `x` (for `x` in the closed domain).
    fn prefix_at(&self, x: &Rational) -> Rational {
        let k = self.piece_at(x);
        &self.prefix[k] + &self.values[k] * (x - &self.breakpoints[k])
    }

    /// Exact `∫_I w` for a subinterval `I` of the domain.
    pub fn integrate(&self, interval: &Interval) -> Result<Rational> {
        self.check_in_domain(interval)?;
        Ok(self.prefix_at(interval.hi()) - self.prefix_at(interval.lo()))
    }

    /// Exact interval average `(∫_I w) / |I|`.
    pub fn average(&self, interval: &Interval) -> Result<Rational> {
        Ok(self.integrate(interval)? / interval.length())
    }

    /// Indices (0-based, inclusive) of the pieces meeting the open interval
    /// in positive measure.
    pub(crate) fn piece_range(&self, interval: &Interval) -> (usize, usize) {
        let n = self.values.len();
        // First piece k with t_{k+1} > lo.
        let first = self.breakpoints[1..=n].partition_point(|t| t <= interval.lo());
        // Last piece k with t_k < hi.
        let last = self.breakpoints[..n].partition_point(|t| t < interval.hi()) - 1;
        (first, last)
    }

    /// Essential infimum over the open interval: the minimum value among
    /// pieces met in positive measure.  Pieces touched only at a point do
    /// not count.
    pub fn essinf(&self, interval: &Interval) -> Result<Rational> {
        self.check_in_domain(interval)?;
        let (first, last) = self.piece_range(interval);
        Ok(self.values[first..=last].iter().min().unwrap().clone())
    }

    /// Exact measure of the strict superlevel set `{x : w(x) > level}`.
    pub fn distribution(&self, level: &Rational) -> Rational {
        let mut measure = Rational::zero();
        for (len, v) in self.pieces() {
            if v > level {
                measure += len;
            }
        }
        measure
    }

    /// Distribution points at every distinct value level (descending levels,
    /// non-decreasing measures).
    pub fn distribution_profile(&self) -> Vec<DistributionPoint> {
        let mut levels: Vec<Rational> = self.values.to_vec();
        levels.sort();
        levels.dedup();
        levels
            .into_iter()
            .rev()
            .map(|level| {
                let measure = self.distribution(&level);
                DistributionPoint { level, measure }
            })
            .collect()
    }

    /// True when the piece values are non-increasing left to right.
    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|pair| pair[0] >= pair[1])
    }

    /// The non-increasing rearrangement on `(0, L]`, `L` the domain length:
    /// same multiset of `(value, length)` pieces, sorted by value descending,
    /// adjacent equal values merged.  Equimeasurable with `self`.
    pub fn rearrange(&self) -> StepWeight {
        let mut pieces: Vec<(Rational, Rational)> =
            self.pieces().map(|(len, v)| (len, v.clone())).collect();
        // Descending by value; equal values merge next, so their order is moot.
        pieces.sort_by(|a, b| b.1.cmp(&a.1));
        let merged = merge_equal_pieces(pieces);
        StepWeight::from_lengths(Rational::zero(), merged)
            .expect("sorted positive pieces form a valid weight")
    }

    /// Exact `∫ w^p` over the domain for integer exponents.
    pub fn power_integral_exact(&self, p: u32) -> Rational {
        let mut acc = Rational::zero();
        for (len, v) in self.pieces() {
            let mut vp = Rational::from_integer(1.into());
            for _ in 0..p {
                vp *= v;
            }
            acc += vp * len;
        }
        acc
    }

    /// `∫ w^p` over the domain in binary64, for real exponents.
    pub fn power_integral_f64(&self, p: f64) -> f64 {
        self.pieces()
            .map(|(len, v)| to_f64(v).powf(p) * to_f64(&len))
            .sum()
    }

    /// The weight scaled by a positive rational factor.
    pub fn scaled(&self, factor: &Rational) -> Result<StepWeight> {
        if *factor <= Rational::zero() {
            return Err(Error::NonPositiveScale {
                factor: format_rational(factor),
            });
        }
        StepWeight::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * factor).collect(),
        )
    }
}

/// Merges adjacent pieces of equal value, dropping nothing else.
pub(crate) fn merge_equal_pieces(
    pieces: Vec<(Rational, Rational)>,
) -> Vec<(Rational, Rational)> {
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(pieces.len());
    for (len, v) in pieces {
        match merged.last_mut() {
            Some((acc_len, acc_v)) if *acc_v == v => *acc_len += len,
            _ => merged.push((len, v)),
        }
    }
    merged
}
