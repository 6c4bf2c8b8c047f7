//! Exact A₁ constants for step weights.
//!
//! The A₁ constant of a weight `w` is the least `c` with
//! `average(w, I) ≤ c · essinf(w, I)` over every subinterval `I` of the
//! domain.  For a step weight the supremum is computable exactly by corner
//! enumeration:
//!
//! Group subintervals by the index range `i..=j` of pieces they meet in
//! positive measure.  Within one group, the left endpoint `a` ranges over
//! `[t_{i-1}, t_i)` and the right endpoint `b` over `(t_{j-1}, t_j]`, the
//! essential infimum is the constant `m = min(v_i ... v_j)`, and the average
//! is `(P(b) − P(a)) / (b − a)` with `P` the prefix integral.  Along either
//! edge of that rectangle the average `A` satisfies
//! `∂A/∂a = (A − v_i)/(b − a)` and `∂A/∂b = (v_j − A)/(b − a)`: the sign of
//! each derivative is the sign of a quantity that the derivative itself
//! preserves, so `A` is monotone along every edge and the supremum over the
//! closed rectangle sits at one of its four corners.  Every corner is also a
//! limit of interiors of the same group (shrink `a` up, `b` down), so corner
//! values never overshoot the supremum; the degenerate corner `a = b`
//! (possible only when `j = i+1`) is skipped, and its limits `v_i`, `v_{i+1}`
//! are covered by the adjacent cells.  The maximum of
//! `average(corner)/m` over all `O(n²)` cells is therefore exactly the least
//! admissible `c` — attained by some interval or approached as a supremum.
//! A random-interval sampling property test backstops the argument.

use num_traits::One;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::weight::StepWeight;

/// The exact A₁ constant together with the corner interval and piece cell
/// that produce it.
///
/// `constant` is the least admissible `c` (a supremum, not necessarily
/// attained); `witness` is the corner interval whose average divided by the
/// cell minimum equals `constant` exactly; `witness_cell` is the 1-based
/// `(i, j)` range of pieces generating that supremum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A1Report {
    pub constant: Rational,
    pub witness: Interval,
    pub witness_cell: (usize, usize),
}

/// Outcome of comparing a weight's A₁ constant against its rearrangement's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RearrangedBoundReport {
    /// `[w]₁` of the input.
    pub original_constant: Rational,
    /// `[w*]₁` of the non-increasing rearrangement.
    pub rearranged_constant: Rational,
    /// Least `c` with `average(0, t) ≤ c · w*(t)` for all `t` (anchored form).
    pub anchored_constant: Rational,
    /// Both derived constants bounded by the original.
    pub pass: bool,
}

/// Computes the exact A₁ constant by corner enumeration (see module docs).
///
/// Ties between cells resolve to the smallest `(i, j)`, then to the
/// lexicographically first corner, so the report is deterministic and
/// independent of any evaluation-order change.
pub fn a1_constant(w: &StepWeight) -> A1Report {
    let bp = w.breakpoints();
    let prefix = w.prefix_sums();
    let values = w.values();
    let n = values.len();

    let mut best: Option<(Rational, usize, usize, usize, usize)> = None;
    for i in 0..n {
        let mut cell_min = values[i].clone();
        for (j, value_j) in values.iter().enumerate().skip(i) {
            if *value_j < cell_min {
                cell_min = value_j.clone();
            }
            // Corners (a, b) with a ∈ {t_i, t_{i+1}}, b ∈ {t_j, t_{j+1}}
            // in lexicographic order; indices increase strictly with the
            // breakpoints, so a < b is an index comparison.
            for (ai, bi) in [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)] {
                if ai >= bi {
                    continue;
                }
                let average = (&prefix[bi] - &prefix[ai]) / (&bp[bi] - &bp[ai]);
                let ratio = average / &cell_min;
                if best.as_ref().is_none_or(|(r, ..)| ratio > *r) {
                    best = Some((ratio, i, j, ai, bi));
                }
            }
        }
    }

    let (constant, i, j, ai, bi) = best.expect("a weight has at least one piece");
    A1Report {
        constant,
        witness: Interval::new(bp[ai].clone(), bp[bi].clone())
            .expect("corner indices are strictly ordered"),
        witness_cell: (i + 1, j + 1),
    }
}

/// Least `c` with `average(t_0, t) ≤ c · w(t)` for every `t` in the domain,
/// exactly — the anchored averaging constant, with the anchor at the
/// domain's left endpoint.
///
/// On each piece the ratio `average(t_0, t)/v_k` is monotone in `t` (same
/// sign-preservation as in [`a1_constant`]), so endpoint candidates suffice:
/// the left limit `average(t_0, t_{k-1})/v_k` for `k ≥ 2` and the attained
/// value `average(t_0, t_k)/v_k`.  For a non-increasing weight the left
/// limits dominate and the result coincides with its A₁ constant.
///
/// With `require_nonincreasing` set, a non-monotone input is rejected.
pub fn hardy_constant(w: &StepWeight, require_nonincreasing: bool) -> Result<Rational> {
    if require_nonincreasing && !w.is_nonincreasing() {
        return Err(Error::NotNonIncreasing);
    }
    let bp = w.breakpoints();
    let prefix = w.prefix_sums();
    let values = w.values();
    let start = &bp[0];

    let mut best = Rational::one();
    for (k, v) in values.iter().enumerate() {
        if k >= 1 {
            let left_limit = &prefix[k] / (&bp[k] - start) / v;
            if left_limit > best {
                best = left_limit;
            }
        }
        let attained = &prefix[k + 1] / (&bp[k + 1] - start) / v;
        if attained > best {
            best = attained;
        }
    }
    Ok(best)
}

/// Verifies that rearranging cannot enlarge the A₁ constant: computes the
/// exact constants of `w` and `w*` and the anchored constant of `w*`, and
/// checks both against the original.
pub fn check_rearranged_bound(w: &StepWeight) -> RearrangedBoundReport {
    let original = a1_constant(w).constant;
    let rearranged_weight = w.rearrange();
    let rearranged = a1_constant(&rearranged_weight).constant;
    let anchored = hardy_constant(&rearranged_weight, true)
        .expect("a rearrangement is non-increasing");
    let pass = rearranged <= original && anchored <= original;
    RearrangedBoundReport {
        original_constant: original,
        rearranged_constant: rearranged,
        anchored_constant: anchored,
        pass,
    }
}
